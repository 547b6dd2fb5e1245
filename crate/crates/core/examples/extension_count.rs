//! Counting good-ladder completions of a fixed side against the bound
//! Delta^k prod s_i / alpha^|J|.

use grid_turan::generators::{complete_graph, tensor_power};
use grid_turan::ladders::{count_constrained_extensions, extension_bound, FixedSide, GoodLadderSpec};
use grid_turan::{Alpha, TensorMode, TensorVertex};

fn main() -> grid_turan::Result<()> {
    let g = complete_graph(6);
    let view = tensor_power(&g, 1, TensorMode::Implicit)?;
    let spec = GoodLadderSpec::with_integer_caps(2, 1, Alpha::from_integer(2), &[4])?;
    let xs = [TensorVertex::from(0), TensorVertex::from(1)];
    for pins in [vec![], vec![(0, 5)]] {
        let c = count_constrained_extensions(&view, &spec, &xs, FixedSide::X, 1, &pins, 1 << 20)?;
        println!("pins {pins:?}: {c} completions, bound {}", extension_bound(&view, &spec, pins.len()));
    }

    let view2 = tensor_power(&complete_graph(5), 2, TensorMode::Implicit)?;
    let spec2 = GoodLadderSpec::with_integer_caps(2, 2, Alpha::from_integer(1), &[9])?;
    let ys = [TensorVertex::new(vec![0, 0]), TensorVertex::new(vec![1, 1])];
    let c = count_constrained_extensions(&view2, &spec2, &ys, FixedSide::Y, 0, &[(1, 4)], 1 << 20)?;
    println!("K_5^2, y side fixed, one pin: {c} completions, bound {}", extension_bound(&view2, &spec2, 1));
    Ok(())
}
