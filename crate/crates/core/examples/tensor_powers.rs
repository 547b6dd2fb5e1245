//! Implicit tensor powers: degrees and codegrees multiply across coordinates.

use grid_turan::generators::{cycle_graph, polarity_graph, tensor_power};
use grid_turan::ladders::{count_ladders, count_ladders_tensor};
use grid_turan::{TensorMode, TensorVertex};

fn main() -> grid_turan::Result<()> {
    let g = polarity_graph(3)?;
    let view = tensor_power(&g, 3, TensorMode::Implicit)?;
    println!("G = polarity graph of PG(2,3): n = {}, e = {}", g.vertex_count(), g.edge_count());
    println!("G^3 has {} vertices, max degree {}", view.vertex_count(), view.max_degree());

    let a = TensorVertex::new(vec![0, 1, 2]);
    let b = TensorVertex::new(vec![3, 4, 5]);
    println!("deg(a) = {} = product of base degrees", view.degree(&a));
    println!("d(a, b) = {}, adjacent: {}", view.codegree(&a, &b), view.is_adjacent(&a, &b));

    // ladder counts are multiplicative: L_t(G^k) = L_t(G)^k
    let c4 = cycle_graph(4)?;
    for k in 1..=3 {
        let base = count_ladders(&c4, 2)?;
        let power = count_ladders_tensor(&c4, k, 2)?;
        println!("C_4, t=2: L(G) = {base}, L(G^{k}) = {power}");
    }

    let explicit = tensor_power(&c4, 2, TensorMode::Explicit)?;
    let h = explicit.explicit_graph().expect("explicit mode");
    println!("C_4^2 materialized: {} vertices, {} edges", h.vertex_count(), h.edge_count());
    Ok(())
}
