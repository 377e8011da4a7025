//! Fox derivatives of the trefoil relator and the Alexander polynomial read
//! off the twisted presentation matrix.

use l2betti::builders::corpus::trefoil_group;
use l2betti::group_ring::{fox_derivative, specialize_phi, Cocycle, GroupRingMatrix};
use l2betti::linalg::{det_laurent, LaurentMatrix};

fn main() -> l2betti::Result<()> {
    let g = trefoil_group();
    let r = &g.relators()[0];
    let d: Vec<_> = (1..=2).map(|j| fox_derivative(r, j)).collect();
    for (j, e) in d.iter().enumerate() {
        println!("d r / d x{} = {e}", j + 1);
    }
    let phi = Cocycle::new(vec![1, 1]);
    let col = GroupRingMatrix::from_entries(1, 1, vec![d[0].clone()])?;
    let m: LaurentMatrix = specialize_phi(&g, &col, &phi)?;
    println!("Alexander polynomial (up to units): {}", det_laurent(&m)?);
    Ok(())
}
