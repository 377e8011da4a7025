use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::group::{Cocycle, FiniteQuotient, FpGroup};
use super::matrix::GroupRingMatrix;
use crate::error::{Error, Result};
use crate::linalg::laurent::{rank_laurent, LaurentMatrix, LaurentPoly};
use crate::linalg::sparse::SparseMatrix;

/// A ring map out of the group ring that makes a boundary matrix computable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Specialization {
    /// Every word goes to 1; recovers the cellular complex of the base space over Q.
    Augmentation,
    /// `w -> t^phi(w)`, coefficients in Q(t).
    Twist(Cocycle),
    /// `w -> ` permutation matrix of its action; yields the finite cover over Q.
    Quotient(FiniteQuotient),
}

/// A boundary matrix after specialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Specialized {
    Rational(SparseMatrix),
    Laurent(LaurentMatrix),
}

impl Specialized {
    pub fn rank(&self) -> usize {
        match self {
            Specialized::Rational(m) => m.rank(),
            Specialized::Laurent(m) => rank_laurent(m),
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            Specialized::Rational(m) => m.rows(),
            Specialized::Laurent(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Specialized::Rational(m) => m.cols(),
            Specialized::Laurent(m) => m.cols(),
        }
    }

    /// True iff `self * rhs` vanishes exactly.
    pub fn product_is_zero(&self, rhs: &Specialized) -> Result<bool> {
        match (self, rhs) {
            (Specialized::Rational(a), Specialized::Rational(b)) => {
                if a.cols() != b.rows() {
                    return Err(Error::Dimension("composite shapes differ".into()));
                }
                Ok(a.mul(b).is_zero())
            }
            (Specialized::Laurent(a), Specialized::Laurent(b)) => Ok(a.mul(b)?.is_zero()),
            _ => Err(Error::Dimension("mixed specializations".into())),
        }
    }
}

impl Specialization {
    /// Number of sheets of the associated cover: the quotient degree, else 1.
    pub fn index(&self) -> usize {
        match self {
            Specialization::Quotient(q) => q.degree(),
            _ => 1,
        }
    }

    pub fn ensure_valid(&self, group: &FpGroup) -> Result<()> {
        match self {
            Specialization::Augmentation => Ok(()),
            Specialization::Twist(phi) => phi.ensure_valid(group),
            Specialization::Quotient(q) => q.ensure_valid(group),
        }
    }

    pub fn apply(&self, m: &GroupRingMatrix) -> Specialized {
        match self {
            Specialization::Augmentation => Specialized::Rational(augment_matrix(m)),
            Specialization::Twist(phi) => Specialized::Laurent(twist_unchecked(m, phi)),
            Specialization::Quotient(q) => Specialized::Rational(quotient_unchecked(m, q)),
        }
    }

    pub fn rank(&self, m: &GroupRingMatrix) -> usize {
        if m.rows() == 0 || m.cols() == 0 {
            return 0;
        }
        self.apply(m).rank()
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::Augmentation => write!(f, "augmentation"),
            Specialization::Twist(phi) => write!(f, "twist{:?}", phi.values()),
            Specialization::Quotient(q) => write!(f, "quotient(degree {})", q.degree()),
        }
    }
}

/// Entrywise augmentation.
pub fn augment_matrix(m: &GroupRingMatrix) -> SparseMatrix {
    let t = m
        .nonzero()
        .map(|(i, j, e)| (i, j, e.augment()))
        .collect();
    SparseMatrix::from_triplets(m.rows(), m.cols(), t)
}

/// Substitutes `w -> t^phi(w)` after checking the cocycle condition.
pub fn specialize_phi(group: &FpGroup, m: &GroupRingMatrix, phi: &Cocycle) -> Result<LaurentMatrix> {
    phi.ensure_valid(group)?;
    Ok(twist_unchecked(m, phi))
}

pub(crate) fn twist_unchecked(m: &GroupRingMatrix, phi: &Cocycle) -> LaurentMatrix {
    let mut out = LaurentMatrix::zeros(m.rows(), m.cols());
    for (i, j, e) in m.nonzero() {
        let mut acc = LaurentPoly::zero();
        for (w, c) in e.terms() {
            acc = &acc + &LaurentPoly::monomial(BigRational::from_integer(c.clone()), phi.eval(w));
        }
        out.set(i, j, acc);
    }
    out
}

/// Replaces each entry by the `n x n` block `Σ c_w P(w)` where `P(w)` sends
/// basis vector `p` to `p . w`.
pub fn specialize_quotient(group: &FpGroup, m: &GroupRingMatrix, q: &FiniteQuotient) -> Result<SparseMatrix> {
    q.ensure_valid(group)?;
    Ok(quotient_unchecked(m, q))
}

pub(crate) fn quotient_unchecked(m: &GroupRingMatrix, q: &FiniteQuotient) -> SparseMatrix {
    let n = q.degree();
    let mut t: Vec<(usize, usize, BigInt)> = Vec::new();
    for (i, j, e) in m.nonzero() {
        for (w, c) in e.terms() {
            for p in 0..n {
                t.push((i * n + q.act(p, w), j * n + p, c.clone()));
            }
        }
    }
    SparseMatrix::from_triplets(m.rows() * n, m.cols() * n, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::element::GroupRingElement;
    use crate::group_ring::fox::fox_derivative;
    use crate::group_ring::word::Word;
    use proptest::prelude::*;

    fn single(e: GroupRingElement) -> GroupRingMatrix {
        let mut m = GroupRingMatrix::zeros(1, 1);
        m.set(0, 0, e);
        m
    }

    fn cycle(k: usize) -> FiniteQuotient {
        FiniteQuotient::new(k, vec![(0..k).map(|p| (p + 1) % k).collect()]).unwrap()
    }

    #[test]
    fn phi_substitution() {
        let g = FpGroup::free(1);
        let m = single(GroupRingElement::word_minus_one(Word::generator(1)));
        let s = specialize_phi(&g, &m, &Cocycle::new(vec![1])).unwrap();
        assert_eq!(s.get(0, 0), &LaurentPoly::from_integers(0, &[-1, 1]));
    }

    #[test]
    fn torus_fox_entry_specializes_to_t_minus_one() {
        let torus = FpGroup::new(2, vec![Word::new(vec![1, 2, -1, -2])]).unwrap();
        let r = &torus.relators()[0];
        let m = single(fox_derivative(r, 2));
        let s = specialize_phi(&torus, &m, &Cocycle::new(vec![1, 0])).unwrap();
        assert_eq!(s.get(0, 0), &LaurentPoly::from_integers(0, &[-1, 1]));
        let s = specialize_phi(&torus, &single(fox_derivative(r, 1)), &Cocycle::new(vec![1, 0])).unwrap();
        assert!(s.get(0, 0).is_zero());
    }

    #[test]
    fn zero_twist_gives_integers() {
        let g = FpGroup::free(2);
        let m = single(GroupRingElement::word(Word::new(vec![1, 2])) + GroupRingElement::integer(2));
        let s = specialize_phi(&g, &m, &Cocycle::new(vec![0, 0])).unwrap();
        assert_eq!(s.get(0, 0), &LaurentPoly::from_integers(0, &[3]));
    }

    #[test]
    fn bad_cocycle_rejected() {
        let trefoil = FpGroup::new(2, vec![Word::new(vec![1, 2, 1, -2, -1, -2])]).unwrap();
        let m = GroupRingMatrix::identity(1);
        assert_eq!(
            specialize_phi(&trefoil, &m, &Cocycle::new(vec![1, 2])),
            Err(Error::CocycleViolation { index: 0, sum: -1 })
        );
    }

    #[test]
    fn regular_representation_of_cyclic_group() {
        let g = FpGroup::free(1);
        let m = single(GroupRingElement::word(Word::generator(1)));
        let s = specialize_quotient(&g, &m, &cycle(3)).unwrap();
        assert_eq!(s.nnz(), 3);
        for p in 0..3 {
            assert_eq!(s.get((p + 1) % 3, p), BigInt::from(1));
        }
    }

    #[test]
    fn trivial_quotient_is_augmentation() {
        let g = FpGroup::free(1);
        let m = single(GroupRingElement::word_minus_one(Word::generator(1)));
        let s = specialize_quotient(&g, &m, &FiniteQuotient::trivial(1, 1)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn circulant_rank_matches_brute_force() {
        let g = FpGroup::free(1);
        let m = single(GroupRingElement::word_minus_one(Word::generator(1)));
        for k in 1..=8 {
            let s = specialize_quotient(&g, &m, &cycle(k)).unwrap();
            // brute force: P - I kills exactly the constant vectors
            let dense = s.to_dense();
            let kernel_dim = {
                let ones_killed = (0..k).all(|i| dense[i].iter().sum::<BigInt>() == BigInt::from(0));
                assert!(ones_killed);
                1
            };
            assert_eq!(s.rank(), k - kernel_dim);
        }
    }

    #[test]
    fn relator_violation_rejected() {
        let torus = FpGroup::new(2, vec![Word::new(vec![1, 2, -1, -2])]).unwrap();
        let q = FiniteQuotient::new(3, vec![vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert!(specialize_quotient(&torus, &GroupRingMatrix::identity(1), &q).is_err());
    }

    fn element_strategy() -> impl Strategy<Value = GroupRingElement> {
        prop::collection::vec(
            (-2i64..=2, prop::collection::vec(prop_oneof![-2i32..=-1, 1i32..=2], 0..4)),
            0..3,
        )
        .prop_map(|t| GroupRingElement::from_terms(t.into_iter().map(|(c, w)| (BigInt::from(c), Word::new(w)))))
    }

    fn matrix_strategy() -> impl Strategy<Value = GroupRingMatrix> {
        prop::collection::vec(element_strategy(), 4)
            .prop_map(|e| GroupRingMatrix::from_entries(2, 2, e).unwrap())
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn specializations_respect_composition(
            a in matrix_strategy(),
            b in matrix_strategy(),
            p1 in perm_strategy(4),
            p2 in perm_strategy(4),
            v in prop::collection::vec(-3i64..=3, 2),
        ) {
            let free = FpGroup::free(2);
            let ab = a.compose(&b).unwrap();
            let q = FiniteQuotient::new(4, vec![p1, p2]).unwrap();
            let lhs = specialize_quotient(&free, &ab, &q).unwrap();
            let rhs = specialize_quotient(&free, &a, &q).unwrap().mul(&specialize_quotient(&free, &b, &q).unwrap());
            prop_assert_eq!(lhs, rhs);

            let phi = Cocycle::new(v);
            let lhs = specialize_phi(&free, &ab, &phi).unwrap();
            let rhs = specialize_phi(&free, &a, &phi).unwrap().mul(&specialize_phi(&free, &b, &phi).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);

            prop_assert_eq!(augment_matrix(&ab), augment_matrix(&a).mul(&augment_matrix(&b)));
        }

        #[test]
        fn degree_one_quotient_is_augmentation(a in matrix_strategy()) {
            let free = FpGroup::free(2);
            let q = FiniteQuotient::trivial(2, 1);
            prop_assert_eq!(specialize_quotient(&free, &a, &q).unwrap(), augment_matrix(&a));
        }

        #[test]
        fn cyclic_quotient_is_twist_at_cycle_matrix(
            e in prop::collection::vec((-2i64..=2, prop::collection::vec(prop_oneof![Just(-1i32), Just(1i32)], 0..5)), 0..4),
            k in 1usize..7,
        ) {
            let free = FpGroup::free(1);
            let m = single(GroupRingElement::from_terms(e.into_iter().map(|(c, w)| (BigInt::from(c), Word::new(w)))));
            let via_quotient = specialize_quotient(&free, &m, &cycle(k)).unwrap();
            let laurent = specialize_phi(&free, &m, &Cocycle::new(vec![1])).unwrap();
            // evaluate t at the k-cycle: t^m becomes the shift by m mod k
            let poly = laurent.get(0, 0);
            let mut t = Vec::new();
            if !poly.is_zero() {
                for x in poly.low()..=poly.high() {
                    let c = poly.coefficient(x);
                    for p in 0..k {
                        let img = (p as i64 + x).rem_euclid(k as i64) as usize;
                        t.push((img, p, c.numer().clone()));
                    }
                }
            }
            prop_assert_eq!(via_quotient, SparseMatrix::from_triplets(k, k, t));
        }
    }
}
