use std::collections::VecDeque;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};
use crate::linalg::dense::integer_nullspace;

/// A finitely presented group `<g1..gn | r1..rm>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpGroup {
    generator_count: usize,
    relators: Vec<Word>,
}

impl FpGroup {
    /// Builds a presentation, freely reducing every relator and rejecting
    /// relators that reduce to the empty word.
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(relators.len());
        for (i, r) in relators.iter().enumerate() {
            r.check(generator_count)?;
            let r = r.reduced();
            if r.is_empty() {
                return Err(Error::EmptyRelator(i));
            }
            reduced.push(r);
        }
        Ok(FpGroup {
            generator_count,
            relators: reduced,
        })
    }

    pub fn free(rank: usize) -> Self {
        FpGroup {
            generator_count: rank,
            relators: Vec::new(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Integer exponent-sum matrix: one row per relator, one column per generator.
    pub fn abelianization(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generator_count];
                for &l in r.letters() {
                    row[l.unsigned_abs() as usize - 1] += l.signum() as i64;
                }
                row
            })
            .collect()
    }

    /// A basis of `Hom(G, Z)` as primitive integer vectors.
    pub fn cocycle_basis(&self) -> Vec<Cocycle> {
        integer_nullspace(&self.abelianization(), self.generator_count)
            .into_iter()
            .map(Cocycle::new)
            .collect()
    }
}

/// A homomorphism `G -> Z`, given by its values on the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cocycle {
    values: Vec<i64>,
}

/// Outcome of checking a cocycle against a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleCheck {
    pub valid: bool,
    /// `(relator index, signed sum)` for every relator with nonzero sum.
    pub violations: Vec<(usize, i64)>,
}

impl Cocycle {
    pub fn new(values: Vec<i64>) -> Self {
        Cocycle { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn eval(&self, w: &Word) -> i64 {
        w.exponent_sum(&self.values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn content(&self) -> i64 {
        self.values.iter().fold(0i64, |g, &v| g.gcd(&v))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn check_arity(&self, group: &FpGroup) -> Result<()> {
        if self.values.len() != group.generator_count() {
            return Err(Error::CocycleArity {
                expected: group.generator_count(),
                got: self.values.len(),
            });
        }
        Ok(())
    }

    /// Fails with the first offending relator.
    pub fn ensure_valid(&self, group: &FpGroup) -> Result<()> {
        self.check_arity(group)?;
        match validate_cocycle(group, self).violations.first() {
            Some(&(index, sum)) => Err(Error::CocycleViolation { index, sum }),
            None => Ok(()),
        }
    }
}

/// True iff every relator has signed sum zero under the cocycle.
pub fn validate_cocycle(group: &FpGroup, phi: &Cocycle) -> CocycleCheck {
    if phi.values.len() != group.generator_count() {
        return CocycleCheck {
            valid: false,
            violations: Vec::new(),
        };
    }
    let violations: Vec<(usize, i64)> = group
        .relators()
        .iter()
        .enumerate()
        .map(|(i, r)| (i, phi.eval(r)))
        .filter(|&(_, s)| s != 0)
        .collect();
    CocycleCheck {
        valid: violations.is_empty(),
        violations,
    }
}

/// A finite quotient given by a permutation action on `{0..degree}`.
///
/// Points are acted on from the right and words are read left to right:
/// `p . (x y) = (p . x) . y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuotient {
    degree: usize,
    perms: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
}

/// Outcome of checking a finite quotient against a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCheck {
    pub valid: bool,
    /// Relators that do not act as the identity.
    pub violations: Vec<usize>,
    pub transitive: bool,
}

impl FiniteQuotient {
    pub fn new(degree: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::MalformedQuotient("degree must be positive".into()));
        }
        let mut inverses = Vec::with_capacity(perms.len());
        for (g, p) in perms.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::MalformedQuotient(format!(
                    "generator {} has {} images, expected {degree}",
                    g + 1,
                    p.len()
                )));
            }
            let mut inv = vec![usize::MAX; degree];
            for (i, &j) in p.iter().enumerate() {
                if j >= degree || inv[j] != usize::MAX {
                    return Err(Error::MalformedQuotient(format!(
                        "generator {} is not a permutation",
                        g + 1
                    )));
                }
                inv[j] = i;
            }
            inverses.push(inv);
        }
        Ok(FiniteQuotient {
            degree,
            perms,
            inverses,
        })
    }

    /// Every generator acts trivially on `degree` points.
    pub fn trivial(generator_count: usize, degree: usize) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        FiniteQuotient::new(degree, vec![id; generator_count]).expect("identity permutations")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_count(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn act_letter(&self, p: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.perms[g][p]
        } else {
            self.inverses[g][p]
        }
    }

    pub fn act(&self, p: usize, w: &Word) -> usize {
        w.letters().iter().fold(p, |q, &l| self.act_letter(q, l))
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Points reachable from `start`, in breadth-first order.
    pub fn orbit(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut order = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for g in 0..self.perms.len() {
                for q in [self.perms[g][p], self.inverses[g][p]] {
                    if !seen[q] {
                        seen[q] = true;
                        order.push(q);
                        queue.push_back(q);
                    }
                }
            }
        }
        order
    }

    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.degree];
        let mut count = 0;
        for p in 0..self.degree {
            if !seen[p] {
                count += 1;
                for q in self.orbit(p) {
                    seen[q] = true;
                }
            }
        }
        count
    }

    pub fn ensure_valid(&self, group: &FpGroup) -> Result<()> {
        if self.perms.len() != group.generator_count() {
            return Err(Error::MalformedQuotient(format!(
                "{} permutations for {} generators",
                self.perms.len(),
                group.generator_count()
            )));
        }
        match validate_quotient(group, self).violations.first() {
            Some(&index) => Err(Error::QuotientViolation { index }),
            None => Ok(()),
        }
    }
}

/// True iff every relator acts as the identity permutation.
pub fn validate_quotient(group: &FpGroup, q: &FiniteQuotient) -> QuotientCheck {
    if q.generator_count() != group.generator_count() {
        return QuotientCheck {
            valid: false,
            violations: Vec::new(),
            transitive: false,
        };
    }
    let violations: Vec<usize> = group
        .relators()
        .iter()
        .enumerate()
        .filter(|(_, r)| (0..q.degree()).any(|p| q.act(p, r) != p))
        .map(|(i, _)| i)
        .collect();
    QuotientCheck {
        valid: violations.is_empty(),
        violations,
        transitive: q.is_transitive(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> FpGroup {
        FpGroup::new(2, vec![Word::new(vec![1, 2, -1, -2])]).unwrap()
    }

    fn trefoil() -> FpGroup {
        FpGroup::new(2, vec![Word::new(vec![1, 2, 1, -2, -1, -2])]).unwrap()
    }

    #[test]
    fn cocycle_examples() {
        assert!(validate_cocycle(&torus(), &Cocycle::new(vec![1, 0])).valid);
        assert!(validate_cocycle(&trefoil(), &Cocycle::new(vec![1, 1])).valid);
        let bad = validate_cocycle(&trefoil(), &Cocycle::new(vec![1, 2]));
        assert!(!bad.valid);
        assert_eq!(bad.violations, vec![(0, -1)]);
    }

    #[test]
    fn quotient_examples() {
        let free = FpGroup::free(2);
        let q = FiniteQuotient::new(3, vec![vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert!(validate_quotient(&free, &q).valid);

        let commuting = FiniteQuotient::new(3, vec![vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert!(validate_quotient(&torus(), &commuting).valid);

        let check = validate_quotient(&torus(), &q);
        assert!(!check.valid);
        assert_eq!(check.violations, vec![0]);
    }

    #[test]
    fn right_action_reads_left_to_right() {
        let q = FiniteQuotient::new(3, vec![vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        // 0 -g1-> 1 -g2-> 0
        assert_eq!(q.act(0, &Word::new(vec![1, 2])), 0);
        // 0 -g2-> 1 -g1-> 2
        assert_eq!(q.act(0, &Word::new(vec![2, 1])), 2);
        assert_eq!(q.act(2, &Word::new(vec![-1])), 1);
    }

    #[test]
    fn empty_relator_rejected() {
        assert_eq!(
            FpGroup::new(1, vec![Word::new(vec![1, -1])]),
            Err(Error::EmptyRelator(0))
        );
    }

    #[test]
    fn cocycle_basis_of_surface_group() {
        let basis = torus().cocycle_basis();
        assert_eq!(basis.len(), 2);
        let trefoil_basis = trefoil().cocycle_basis();
        assert_eq!(trefoil_basis.len(), 1);
        assert_eq!(trefoil_basis[0].content(), 1);
        assert!(validate_cocycle(&trefoil(), &trefoil_basis[0]).valid);
    }
}
