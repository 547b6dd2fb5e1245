//! Blown-up polarity graphs: dense and free of the t x t grid.

use grid_turan::oracle::{verify_lower_bound_construction, SearchBudget};
use std::time::{Duration, Instant};

fn main() -> grid_turan::Result<()> {
    for (q, t) in [(2, 3), (3, 3), (5, 3), (2, 4)] {
        let budget = SearchBudget::until(Instant::now() + Duration::from_secs(20));
        let r = verify_lower_bound_construction(q, t, &budget)?;
        print!("{}", r.to_report());
        println!();
    }
    Ok(())
}
