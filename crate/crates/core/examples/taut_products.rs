//! Tautness verdicts for products of surfaces with an interval.

use l2betti::builders::{product_with_interval, surface};
use l2betti::chain::betti;
use l2betti::covers::{QuotientSchedule, DEFAULT_CYCLIC};
use l2betti::group_ring::Specialization;
use l2betti::sutured::{taut_certify, ProductCertificateInput};

fn main() -> l2betti::Result<()> {
    for (g, b) in [(1, 0), (2, 0), (1, 1)] {
        let f = surface(g, b)?;
        let sc = product_with_interval(&f)?;
        let cert = ProductCertificateInput::identities(&betti(&f, &Specialization::Augmentation)?.unnormalized);
        for phi in sc.space.group().cocycle_basis().into_iter().take(2) {
            let sched = QuotientSchedule::cyclic(&phi, &DEFAULT_CYCLIC)?;
            let rep = taut_certify(&sc, &phi, &sched, Some(&cert))?;
            println!(
                "genus {g}, {b} boundary: phi={:?} -> {} (twisted {:?})",
                phi.values(),
                rep.verdict,
                rep.twisted_betti.unnormalized
            );
        }
    }
    Ok(())
}
