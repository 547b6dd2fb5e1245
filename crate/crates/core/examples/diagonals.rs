//! Every choice of one diagonal per unit square admits a crossing path.

use grid_turan::oracle::{diagonal_crossing, CrossingDirection, DiagonalAssignment};

fn main() -> grid_turan::Result<()> {
    let a = DiagonalAssignment::from_bitstring(4, "101010101")?;
    let p = diagonal_crossing(&a);
    println!("{a}: {} path {:?}", p.direction, p.points);

    for t in 2..=5usize {
        let squares = (t - 1) * (t - 1);
        let (mut lr, mut shortest, mut longest) = (0u64, usize::MAX, 0);
        for mask in 0..1u64 << squares {
            let p = diagonal_crossing(&DiagonalAssignment::from_mask(t, mask)?);
            lr += u64::from(p.direction == CrossingDirection::LeftRight);
            shortest = shortest.min(p.points.len());
            longest = longest.max(p.points.len());
        }
        println!("t={t}: {} assignments, {lr} left-right, path lengths {shortest}..={longest}", 1u64 << squares);
    }
    Ok(())
}
