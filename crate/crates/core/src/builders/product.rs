use num_bigint::BigInt;

use crate::chain::{euler_char, Cell, EquivariantComplex};
use crate::error::{Error, Result};
use crate::group_ring::{conjugator, fox_derivative, Cocycle, FpGroup, GroupRingElement, GroupRingMatrix, Word};
use crate::sutured::{DeclaredFlags, SuturedComplex, GAMMA, R_MINUS, R_PLUS};

fn sign(degree: usize) -> i64 {
    if degree.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `F × [-1, 1]` as a sutured complex.
///
/// Degree-d cells are ordered `c × {-1}` (label `R-`), `c × {+1}` (label
/// `R+`), then `c × I` for every (d-1)-cell `c` of `F`; the cylinder over a
/// labeled cell of `F` is labeled `gamma`. The boundary of `c × I` is
/// `(∂c) × I + (-1)^|c| (c × {+1} - c × {-1})`. The pairing matches the two
/// copies of every cell. Every flag is declared true except `infinite_pi1`,
/// which is declared only when `χ(F) <= 0`.
pub fn product_with_interval(f: &EquivariantComplex) -> Result<SuturedComplex> {
    if f.top_degree() != 2 {
        return Err(Error::Builder(format!(
            "product needs a 2-dimensional fiber, got top degree {}",
            f.top_degree()
        )));
    }
    let n = |d: usize| f.cell_count(d);
    let minus = |_d: usize, i: usize| i;
    let plus = |d: usize, i: usize| n(d) + i;
    let cyl = |d: usize, i: usize| 2 * n(d) + i;
    let counts: Vec<usize> = (0..=3).map(|d| 2 * n(d) + if d > 0 { n(d - 1) } else { 0 }).collect();

    let mut boundaries = Vec::with_capacity(3);
    for d in 1..=3 {
        let mut m = GroupRingMatrix::zeros(counts[d - 1], counts[d]);
        if d <= 2 {
            for (r, c, e) in f.boundary(d).nonzero() {
                m.set(minus(d - 1, r), minus(d, c), e.clone());
                m.set(plus(d - 1, r), plus(d, c), e.clone());
            }
        }
        let e = d - 1;
        if e >= 1 {
            for (r, c, x) in f.boundary(e).nonzero() {
                m.set(cyl(e, r), cyl(d, c), x.clone());
            }
        }
        for i in 0..n(e) {
            let s = sign(e);
            m.add_to(plus(e, i), cyl(d, i), &GroupRingElement::integer(s));
            m.add_to(minus(e, i), cyl(d, i), &GroupRingElement::integer(-s));
        }
        boundaries.push(m);
    }

    let mut labels: Vec<Vec<Option<String>>> = counts.iter().map(|&c| vec![None; c]).collect();
    let mut pairing = Vec::new();
    for d in 0..=3 {
        for i in 0..n(d) {
            labels[d][minus(d, i)] = Some(R_MINUS.to_string());
            labels[d][plus(d, i)] = Some(R_PLUS.to_string());
            pairing.push((Cell::new(d, minus(d, i)), Cell::new(d, plus(d, i))));
        }
        if d > 0 {
            for i in 0..n(d - 1) {
                if f.label(Cell::new(d - 1, i)).is_some() {
                    labels[d][cyl(d, i)] = Some(GAMMA.to_string());
                }
            }
        }
    }
    let space = EquivariantComplex::with_labels(f.group().clone(), counts, boundaries, labels)?;
    let mut flags = DeclaredFlags::all(true);
    flags.infinite_pi1 = euler_char(f) <= 0;
    Ok(SuturedComplex {
        space,
        flags,
        pairing,
    })
}

/// Images of the generators of a fiber group under a monodromy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromySpec {
    pub images: Vec<Word>,
}

impl MonodromySpec {
    pub fn identity(generators: usize) -> Self {
        MonodromySpec {
            images: (1..=generators).map(Word::generator).collect(),
        }
    }
}

/// Checks that `f` is the presentation complex of its group: one vertex, edge
/// `j` a loop reading generator `j + 1`, face `k` attached along relator `k`.
fn ensure_presentation_complex(f: &EquivariantComplex) -> Result<()> {
    let g = f.group();
    let ok_shape = f.top_degree() == 2
        && f.cell_count(0) == 1
        && f.cell_count(1) == g.generator_count()
        && f.cell_count(2) == g.relators().len();
    if !ok_shape {
        return Err(Error::Builder(
            "fiber must be a one-vertex 2-complex with one edge per generator and one face per relator".into(),
        ));
    }
    for j in 0..f.cell_count(1) {
        if *f.boundary(1).get(0, j) != GroupRingElement::word_minus_one(Word::generator(j + 1)) {
            return Err(Error::Builder(format!("edge {j} does not read generator {}", j + 1)));
        }
    }
    for (k, r) in g.relators().iter().enumerate() {
        for j in 0..f.cell_count(1) {
            if *f.boundary(2).get(j, k) != fox_derivative(r, j + 1) {
                return Err(Error::Builder(format!("face {k} is not attached along relator {k}")));
            }
        }
    }
    Ok(())
}

/// Mapping torus of a monodromy on a one-vertex surface complex.
///
/// The group gains a stable letter `τ` (last generator) with relators
/// `τ^-1 x τ = α(x)`. Cells are those of `F` followed by `c × I`, with
/// `∂(c × I) = (∂c) × I + (-1)^|c| (τ·Φ(c) - c)` where `Φ` is the chain map of
/// the monodromy (Fox derivatives on edges, conjugated relators on faces).
/// Labeled cells of `F` must be fixed by the monodromy; they and their
/// cylinders are labeled `gamma`. Returns the complex and the fibration class.
pub fn mapping_torus(f: &EquivariantComplex, m: &MonodromySpec) -> Result<(EquivariantComplex, Cocycle)> {
    if f.top_degree() != 2 {
        return Err(Error::Builder("the fiber must be a surface".into()));
    }
    ensure_presentation_complex(f)?;
    let g = f.group();
    let ng = g.generator_count();
    if m.images.len() != ng {
        return Err(Error::Builder(format!("{} images for {ng} generators", m.images.len())));
    }
    for w in &m.images {
        w.check(ng)?;
    }
    let images: Vec<Word> = m.images.iter().map(Word::reduced).collect();
    for j in 0..ng {
        if f.label(Cell::new(1, j)).is_some() && images[j] != Word::generator(j + 1) {
            return Err(Error::Builder(format!("monodromy moves boundary generator {}", j + 1)));
        }
    }

    // Φ on faces: α(r_k) = w r_σ^ε w^-1
    let rels = g.relators();
    let mut face_map = Vec::with_capacity(rels.len());
    for (k, r) in rels.iter().enumerate() {
        let image = r.substitute(&images);
        let found = rels.iter().enumerate().find_map(|(s, rs)| {
            conjugator(&image, rs)
                .map(|w| (s, 1i64, w))
                .or_else(|| conjugator(&image, &rs.inverse()).map(|w| (s, -1i64, w)))
        });
        match found {
            Some(x) => face_map.push(x),
            None => return Err(Error::Builder(format!("monodromy fails relator check on relator {k}"))),
        }
    }

    let tau = ng + 1;
    let tau_w = Word::generator(tau);
    let mut relators = rels.to_vec();
    for (j, img) in images.iter().enumerate() {
        let mut w = vec![-(tau as i32), j as i32 + 1, tau as i32];
        w.extend(img.inverse().letters());
        relators.push(Word::new(w));
    }
    let group = FpGroup::new(tau, relators)?;

    let phi_matrix = |e: usize| -> GroupRingMatrix {
        match e {
            0 => GroupRingMatrix::identity(1),
            1 => {
                let mut d = GroupRingMatrix::zeros(ng, ng);
                for (j, img) in images.iter().enumerate() {
                    for i in 0..ng {
                        d.set(i, j, fox_derivative(img, i + 1));
                    }
                }
                d
            }
            _ => {
                let mut d = GroupRingMatrix::zeros(rels.len(), rels.len());
                for (k, (s, eps, w)) in face_map.iter().enumerate() {
                    d.set(*s, k, GroupRingElement::monomial(BigInt::from(*eps), w.clone()));
                }
                d
            }
        }
    };

    let n = |d: usize| f.cell_count(d);
    let counts: Vec<usize> = (0..=3).map(|d| n(d) + if d > 0 { n(d - 1) } else { 0 }).collect();
    let mut boundaries = Vec::with_capacity(3);
    for d in 1..=3 {
        let mut m = GroupRingMatrix::zeros(counts[d - 1], counts[d]);
        if d <= 2 {
            for (r, c, e) in f.boundary(d).nonzero() {
                m.set(r, c, e.clone());
            }
        }
        let e = d - 1;
        if e >= 1 {
            for (r, c, x) in f.boundary(e).nonzero() {
                m.set(n(e) + r, n(d) + c, x.clone());
            }
        }
        let s = BigInt::from(sign(e));
        let phi = phi_matrix(e);
        for (r, c, x) in phi.nonzero() {
            m.add_to(r, n(d) + c, &x.mul_word_left(&tau_w).scale(&s));
        }
        for i in 0..n(e) {
            m.add_to(i, n(d) + i, &GroupRingElement::integer(-s.clone()));
        }
        boundaries.push(m);
    }
    let mut labels: Vec<Vec<Option<String>>> = counts.iter().map(|&c| vec![None; c]).collect();
    for c in f.cells() {
        if f.label(c).is_some() {
            labels[c.degree][c.index] = Some(GAMMA.to_string());
            labels[c.degree + 1][n(c.degree + 1) + c.index] = Some(GAMMA.to_string());
        }
    }
    let x = EquivariantComplex::with_labels(group, counts, boundaries, labels)?;
    let mut phi = vec![0i64; tau];
    phi[tau - 1] = 1;
    Ok((x, Cocycle::new(phi)))
}
