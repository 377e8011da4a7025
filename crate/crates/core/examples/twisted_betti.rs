//! Betti numbers over Q(t) for a few complexes and cocycles.

use l2betti::builders::corpus::trefoil_group;
use l2betti::builders::{fox_complex, surface};
use l2betti::chain::{betti, twisted_betti};
use l2betti::group_ring::{Cocycle, FpGroup, Specialization};

fn main() -> l2betti::Result<()> {
    let cases = [
        ("circle", fox_complex(&FpGroup::free(1))?, vec![1]),
        ("torus", surface(1, 0)?, vec![1, 0]),
        ("genus 2", surface(2, 0)?, vec![0, 1, 1, 0]),
        ("trefoil", fox_complex(&trefoil_group())?, vec![1, 1]),
    ];
    for (name, x, phi) in cases {
        let q = betti(&x, &Specialization::Augmentation)?;
        let t = twisted_betti(&x, &Cocycle::new(phi.clone()))?;
        println!("{name:<8} phi={phi:?}  over Q {:?}  over Q(t) {:?}", q.unnormalized, t.unnormalized);
    }
    Ok(())
}
