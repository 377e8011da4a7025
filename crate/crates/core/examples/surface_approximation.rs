//! Normalized first Betti numbers of cyclic covers of a genus-2 surface,
//! converging to the twisted value 2.

use l2betti::builders::surface;
use l2betti::covers::{approximate, QuotientSchedule, DEFAULT_CYCLIC};
use l2betti::group_ring::Cocycle;

fn main() -> l2betti::Result<()> {
    let x = surface(2, 0)?;
    let phi = Cocycle::new(vec![1, 0, 0, 0]);
    let seq = approximate(&x, &QuotientSchedule::cyclic(&phi, &DEFAULT_CYCLIC)?)?;
    println!("{:>4}  {:>14}  b1/k", "k", "betti");
    for item in &seq.items {
        let b = format!("{:?}", item.betti.unnormalized);
        println!("{:>4}  {b:>14}  {}", item.degree, item.betti.normalized()[1]);
    }
    if let Some(est) = &seq.limit {
        println!("fitted limit of b1/k: {}", est.limit[1]);
    }
    Ok(())
}
