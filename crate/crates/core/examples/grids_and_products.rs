//! Grids as Cartesian products, written in the canonical edge-list format.

use grid_turan::generators::{cartesian_product, cycle_graph, make_grid, make_path};
use grid_turan::io::write_graph;

fn main() -> grid_turan::Result<()> {
    let f3 = make_grid(3, 2)?;
    let same = cartesian_product(&make_path(3)?, &make_path(3)?)?;
    assert_eq!(f3, same);
    println!("F_3: {} vertices, {} edges", f3.vertex_count(), f3.edge_count());

    // 2t(t-1) edges in the t x t grid
    for t in 2..=6 {
        let g = make_grid(t, 2)?;
        println!("t={t}: e(F_t) = {} = 2t(t-1)", g.edge_count());
    }

    let cube = make_grid(2, 3)?;
    println!("P_2^3 is the cube: {} vertices, {} edges", cube.vertex_count(), cube.edge_count());

    let torus = cartesian_product(&cycle_graph(4)?, &cycle_graph(4)?)?;
    println!("C_4 x C_4 is 4-regular: max degree {}", torus.max_degree());

    print!("{}", write_graph(&make_grid(2, 2)?));
    Ok(())
}
