//! `b_i(M, R- ∪ γ) = b_{3-i}(M, R+)` on the sutured corpus, over Q and twisted.

use l2betti::builders::corpus::corpus;
use l2betti::group_ring::Specialization;
use l2betti::sutured::{duality_check, is_balanced};

fn main() -> l2betti::Result<()> {
    for (name, doc) in corpus()? {
        if !doc.is_sutured() {
            continue;
        }
        let sc = doc.sutured()?;
        let q = duality_check(&sc, &Specialization::Augmentation)?;
        let twisted = match doc.cocycles.values().next() {
            Some(phi) => duality_check(&sc, &Specialization::Twist(phi.clone()))?.holds.to_string(),
            None => "-".into(),
        };
        println!(
            "{name:<24} balanced={:<5} (M,R-+g)={:?} (M,R+)={:?} Q:{} Q(t):{twisted}",
            is_balanced(&sc).balanced,
            q.minus_with_gamma.unnormalized,
            q.plus.unnormalized,
            q.holds
        );
    }
    Ok(())
}
