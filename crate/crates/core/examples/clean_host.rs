//! The two-type deletion procedure and host preparation.

use grid_turan::cleaning::{check_host_conditions, clean_subgraph, prepare_host};
use grid_turan::generators::{complete_graph, make_path, random_graph};
use grid_turan::Graph;

fn main() -> grid_turan::Result<()> {
    // K_12 with a pendant path: the path is deleted, the clique survives
    let mut edges: Vec<(usize, usize)> = complete_graph(12).edges().collect();
    edges.extend([(11, 12), (12, 13), (13, 14)]);
    let g = Graph::from_edges(15, edges)?;
    let (h, report) = clean_subgraph(&g)?;
    println!("input e = {}, cleaned e = {}", g.edge_count(), h.edge_count());
    println!("thresholds: {:?}", report.thresholds);
    print!("{}", report.to_text());
    assert_eq!(report.replay(&g)?, h);

    let r = random_graph(80, 0.4, 1)?;
    let (h, report) = clean_subgraph(&r)?;
    println!("G(80, 0.4): {} -> {} edges, {} deletions", r.edge_count(), h.edge_count(), report.deletions.len());

    let check = check_host_conditions(&h, &h.edge_density_alpha()?)?;
    println!("host conditions at own density: all hold = {}", check.all_hold());

    match prepare_host(&r) {
        Ok(host) => println!(
            "prepared host: m = {}, e = {}, alpha' = {:.4} ({:?})",
            host.m,
            host.graph.edge_count(),
            host.alpha_prime.to_f64(),
            host.alpha_source
        ),
        Err(f) => println!("host preparation failed: {f}"),
    }
    match prepare_host(&make_path(10)?) {
        Ok(host) => println!("path host: m = {}", host.m),
        Err(f) => println!("path host: {f}"),
    }
    Ok(())
}
