//! Dyadic harvest of good ladders, with the per-step log.

use grid_turan::generators::{complete_graph, random_graph, tensor_power};
use grid_turan::ladders::{harvest_good_ladders, is_good_ladder, HarvestOptions};
use grid_turan::{Alpha, TensorMode};

fn main() -> grid_turan::Result<()> {
    let g = complete_graph(260);
    let alpha = g.edge_density_alpha()?;
    let view = tensor_power(&g, 1, TensorMode::Implicit)?;
    let h = harvest_good_ladders(&view, 2, &alpha, &HarvestOptions::default())?;
    println!("K_260, t=2, alpha = {:.4}: s = {:?}, count = {}", alpha.to_f64(), h.s_values(), h.count);
    println!("lower bound 2^{:.2}, met: {}", h.lower_bound_log2(), h.meets_lower_bound());

    let g = random_graph(30, 0.6, 4)?;
    let view = tensor_power(&g, 1, TensorMode::Implicit)?;
    let opts = HarvestOptions { materialize: true, enforce_alpha_guard: false, ..Default::default() };
    let h = harvest_good_ladders(&view, 3, &Alpha::from_integer(2), &opts)?;
    for s in &h.step_log {
        println!(
            "step {}: {} tuples, bucket (s/2, {}], kept {:.3}, produced {}",
            s.step,
            s.tuples_before,
            s.bucket_upper,
            s.fraction(),
            s.produced
        );
    }
    let ladders = h.ladders.as_deref().unwrap_or_default();
    let good = ladders.iter().filter(|l| is_good_ladder(&view, l, &h.spec).unwrap_or(false)).count();
    println!("materialized {} ladders, {} good", ladders.len(), good);
    Ok(())
}
