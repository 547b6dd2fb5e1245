//! Finding T x P_t in random hosts; every copy is checked independently.

use grid_turan::embedder::{embed_tree_product, verify_embedding, WorkingParams};
use grid_turan::generators::{make_path, random_graph, star_graph};
use grid_turan::Alpha;

fn main() -> grid_turan::Result<()> {
    let host = random_graph(100, 0.5, 1)?;
    let cases = [("P_3 x P_3", make_path(3)?, 3), ("P_2 x P_2", make_path(2)?, 2), ("K_{1,3} x P_2", star_graph(3), 2)];
    for (name, tree, t) in cases {
        let params = WorkingParams::new(1, Alpha::from_integer(2));
        match embed_tree_product(&host, &tree, t, &params) {
            Ok(out) => {
                let ok = verify_embedding(&host, &tree, t, &out.embedding);
                println!("{name}: found, verified = {ok}, s = {:?}", out.diagnostics.s_values);
                for (p, row) in out.embedding.assignment.iter().enumerate() {
                    println!("  tree vertex {p}: {row:?}");
                }
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
    Ok(())
}
