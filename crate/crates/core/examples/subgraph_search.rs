//! Exact subgraph search with a node budget.

use grid_turan::generators::{blowup, cycle_graph, make_grid, polarity_graph, random_graph};
use grid_turan::oracle::{contains_subgraph, SearchBudget};

fn main() -> grid_turan::Result<()> {
    let f3 = make_grid(3, 2)?;
    let g = random_graph(40, 0.5, 2)?;
    match contains_subgraph(&g, &f3, &SearchBudget::unlimited())? {
        Some(map) => println!("F_3 in G(40, 0.5): {map:?}"),
        None => println!("G(40, 0.5) has no F_3"),
    }
    let b = blowup(&polarity_graph(2)?, 2)?;
    println!("F_3 in 2-blowup of PG(2,2) polarity: {:?}", contains_subgraph(&b, &f3, &SearchBudget::unlimited())?);
    println!("C_4 in it: {}", contains_subgraph(&b, &cycle_graph(4)?, &SearchBudget::unlimited())?.is_some());
    match contains_subgraph(&random_graph(60, 0.2, 3)?, &f3, &SearchBudget::nodes(100)) {
        Ok(r) => println!("small budget: {}", r.is_some()),
        Err(e) => println!("small budget: {e}"),
    }
    Ok(())
}
