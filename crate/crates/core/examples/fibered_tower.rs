//! Stacking copies of a once-punctured torus times an interval.

use l2betti::builders::{product_with_interval, surface, tower_report};

fn main() -> l2betti::Result<()> {
    let piece = product_with_interval(&surface(1, 1)?)?;
    for n in 0..=4 {
        let rep = tower_report(&piece, &piece.pairing, n)?;
        println!(
            "n={n} b(X_n)={:?} b(X_n, X_n-1)={:?} norm estimate {} (complexity of the fiber {})",
            rep.betti.unnormalized, rep.relative.unnormalized, rep.norm_estimate, rep.sigma_complexity
        );
    }
    Ok(())
}
