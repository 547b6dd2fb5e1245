//! Exact small Turan numbers with extremal witnesses.

use grid_turan::generators::{complete_graph, cycle_graph, make_grid, make_path};
use grid_turan::io::write_graph;
use grid_turan::oracle::turan_number;

fn main() -> grid_turan::Result<()> {
    let c4 = cycle_graph(4)?;
    for n in 1..=8 {
        let r = turan_number(n, &c4, None)?;
        println!("ex({n}, C_4) = {}  classes per layer {:?}", r.value, r.layer_sizes);
    }
    let k3 = complete_graph(3);
    let values: Vec<usize> = (1..=8).map(|n| turan_number(n, &k3, None).map(|r| r.value)).collect::<Result<_, _>>()?;
    println!("ex(n, K_3) = {values:?}, floor(n^2/4)");

    let p4 = make_path(4)?;
    let r = turan_number(7, &p4, None)?;
    println!("ex(7, P_4) = {}", r.value);

    let f3 = make_grid(3, 2)?;
    let r = turan_number(10, &f3, Some(std::time::Duration::from_secs(5)))?;
    println!("ex(10, F_3) >= {} (exact: {})", r.value, r.exact);
    print!("{}", write_graph(&r.witness));
    Ok(())
}
