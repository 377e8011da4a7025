//! Half of the first homology of the boundary dies in the interior.

use l2betti::builders::corpus::corpus;
use l2betti::group_ring::Specialization;
use l2betti::sutured::half_lives_half_dies;

fn main() -> l2betti::Result<()> {
    for (name, doc) in corpus()? {
        if !doc.is_sutured() || doc.sutured()?.boundary().is_empty() {
            continue;
        }
        let rep = half_lives_half_dies(&doc.complex, &Specialization::Augmentation)?;
        println!(
            "{name:<24} b1(boundary)={} kernel={} holds={}",
            rep.boundary_betti, rep.kernel_rank, rep.holds
        );
    }
    Ok(())
}
