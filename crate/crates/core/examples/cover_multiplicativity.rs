//! Betti numbers of a big cover computed directly and through an
//! intermediate cover agree.

use l2betti::builders::surface;
use l2betti::covers::{check_multiplicativity, cyclic_quotient, lift_to_cover};
use l2betti::group_ring::Cocycle;

fn main() -> l2betti::Result<()> {
    let x = surface(2, 0)?;
    let phi = Cocycle::new(vec![1, 0, 0, 0]);
    for (k, m) in [(2, 4), (2, 6), (4, 8)] {
        let rep = check_multiplicativity(&x, &cyclic_quotient(&phi, k)?, &cyclic_quotient(&phi, m)?)?;
        println!(
            "{k} | {m}: direct {:?}, via the {k}-fold cover {:?}, equal {}",
            rep.direct.unnormalized, rep.via_cover.unnormalized, rep.equal
        );
    }
    let cover = lift_to_cover(&x, &cyclic_quotient(&phi, 3)?)?;
    println!(
        "3-fold cover: cells {:?}, {} generators",
        cover.complex.cell_counts(),
        cover.complex.group().generator_count()
    );
    Ok(())
}
