//! Size of the constants in the existence argument.

use grid_turan::embedder::theorem_parameters;

fn main() -> grid_turan::Result<()> {
    for (r, t, n) in [(2, 2, 1 << 10), (2, 3, 1 << 20), (3, 3, 1 << 30)] {
        let p = theorem_parameters(r, t, n)?;
        println!("r={r} t={t} n={n}: log2(alpha) = {:.2}, k_min = {}", p.alpha_log2, p.k_min);
    }
    Ok(())
}
