//! Named example complexes used by tests, examples and the `corpus` command.

use crate::builders::{
    double, fox_complex, mapping_torus, product_with_interval, surface, tower, MonodromySpec,
};
use crate::chain::{betti, EquivariantComplex};
use crate::covers::cyclic_quotient;
use crate::error::Result;
use crate::group_ring::{Cocycle, FpGroup, Specialization, Word};
use crate::io::Document;
use crate::sutured::{DeclaredFlags, ProductCertificateInput, SuturedComplex};

pub fn trefoil_group() -> FpGroup {
    FpGroup::new(2, vec![Word::new(vec![1, 2, 1, -2, -1, -2])]).expect("trefoil relator")
}

/// `a -> ab`, everything else fixed.
pub fn shear(generators: usize) -> MonodromySpec {
    let mut m = MonodromySpec::identity(generators);
    m.images[0] = Word::new(vec![1, 2]);
    m
}

fn with_cocycles(mut doc: Document, cocycles: &[Vec<i64>]) -> Result<Document> {
    for (i, v) in cocycles.iter().enumerate() {
        doc = doc.with_cocycle(&format!("phi{i}"), v.clone());
    }
    if let Some(phi) = cocycles.first() {
        let q = cyclic_quotient(&Cocycle::new(phi.clone()), 2)?;
        doc = doc.with_quotient("cyclic2", q);
        let q = cyclic_quotient(&Cocycle::new(phi.clone()), 3)?;
        doc = doc.with_quotient("cyclic3", q);
    }
    Ok(doc)
}

/// Product sutured document with identity certificate maps on `H_*(F; Q)`.
fn product_doc(f: &EquivariantComplex, cocycles: &[Vec<i64>]) -> Result<Document> {
    let dims = betti(f, &Specialization::Augmentation)?.unnormalized;
    let mut doc = Document::from_sutured(product_with_interval(f)?);
    doc.certificate = Some(ProductCertificateInput::identities(&dims));
    with_cocycles(doc, cocycles)
}

fn bundle_doc(f: &EquivariantComplex, m: &MonodromySpec) -> Result<Document> {
    let (x, phi) = mapping_torus(f, m)?;
    let doc = Document::from_sutured(SuturedComplex::new(x, DeclaredFlags::all(true)));
    with_cocycles(doc, &[phi.values().to_vec()])
}

fn stable_letter_cocycle(generators: usize) -> Vec<i64> {
    let mut v = vec![0; generators];
    v[generators - 1] = 1;
    v
}

/// Every corpus object, in a fixed order.
pub fn corpus() -> Result<Vec<(String, Document)>> {
    let torus = surface(1, 0)?;
    let genus2 = surface(2, 0)?;
    let punctured = surface(1, 1)?;
    let disk = surface(0, 1)?;
    let mut out: Vec<(String, Document)> = Vec::new();
    let mut push = |name: &str, doc: Document| out.push((name.to_string(), doc));

    push("circle", with_cocycles(Document::new(fox_complex(&FpGroup::free(1))?), &[vec![1]])?);
    push("wedge2", with_cocycles(Document::new(fox_complex(&FpGroup::free(2))?), &[vec![1, 0], vec![1, 1]])?);
    push("torus", with_cocycles(Document::new(torus.clone()), &[vec![1, 0], vec![0, 1], vec![1, 1]])?);
    push(
        "surface_g2",
        with_cocycles(Document::new(genus2.clone()), &[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![1, 1, 0, 1]])?,
    );
    push("trefoil", with_cocycles(Document::new(fox_complex(&trefoil_group())?), &[vec![1, 1]])?);
    push("disk", Document::new(disk.clone()));
    push("surface_g1b1", with_cocycles(Document::new(punctured.clone()), &[vec![1, 0, 0], vec![0, 1, 0]])?);
    push("product_torus", product_doc(&torus, &[vec![1, 0], vec![0, 1], vec![1, 1]])?);
    push(
        "product_g2",
        product_doc(&genus2, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![1, 1, 0, 1]])?,
    );
    push("product_g1b1", product_doc(&punctured, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]])?);
    push("product_disk", product_doc(&disk, &[])?);
    push("solid_torus", bundle_doc(&disk, &MonodromySpec::identity(1))?);
    push("torus_bundle_id", bundle_doc(&torus, &MonodromySpec::identity(2))?);
    push("torus_bundle_shear", bundle_doc(&torus, &shear(2))?);
    push("punctured_bundle_id", bundle_doc(&punctured, &MonodromySpec::identity(3))?);
    push("punctured_bundle_shear", bundle_doc(&punctured, &shear(3))?);

    for (name, base) in [("double_product_torus", &torus), ("double_product_g1b1", &punctured)] {
        let d = double(&product_with_interval(base)?)?;
        let gens = d.space.group().generator_count();
        let doc = with_cocycles(Document::from_sutured(d), &[stable_letter_cocycle(gens)])?;
        push(name, doc);
    }

    let piece = product_with_interval(&punctured)?;
    let t = tower(&piece, &piece.pairing, 2)?;
    push("tower_g1b1_n2", Document::new(t.complex));
    Ok(out)
}

/// Looks up one corpus object by name.
pub fn corpus_item(name: &str) -> Result<Document> {
    corpus()?
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, d)| d)
        .ok_or_else(|| crate::error::Error::Format(format!("no corpus object named {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::validate_complex;
    use crate::sutured::validate_sutured;

    #[test]
    fn corpus_validates() {
        for (name, doc) in corpus().unwrap() {
            assert!(validate_complex(&doc.complex, &Specialization::Augmentation).unwrap().valid, "{name}");
            for (c, phi) in &doc.cocycles {
                let chk = validate_complex(&doc.complex, &Specialization::Twist(phi.clone())).unwrap();
                assert!(chk.valid, "{name} {c}");
            }
            if let Ok(sc) = doc.sutured() {
                let chk = validate_sutured(&sc);
                assert!(chk.valid, "{name}: {:?}", chk.problems);
            }
        }
    }
}
