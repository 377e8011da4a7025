use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the generators of a finitely presented group.
///
/// Letters are signed generator indices starting at 1: `k` is the k-th
/// generator and `-k` its inverse. Zero is never a valid letter.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as i32])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks every letter against the generator count of the ambient group.
    pub fn check(&self, generator_count: usize) -> Result<()> {
        for &l in &self.0 {
            if l == 0 || l.unsigned_abs() as usize > generator_count {
                return Err(Error::InvalidGenerator {
                    index: l,
                    count: generator_count,
                });
            }
        }
        Ok(())
    }

    /// Free reduction without range checking.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != -p[1])
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, rhs: &Word) -> Word {
        let mut out = self.reduced().0;
        for &l in &rhs.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Signed sum of `values` along the word (`values[k-1]` is the value on generator k).
    pub fn exponent_sum(&self, values: &[i64]) -> i64 {
        self.0
            .iter()
            .map(|&l| {
                let v = values[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// Replaces every generator by a word (`images[k-1]` for generator k).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            out = if l > 0 {
                out.mul(img)
            } else {
                out.mul(&img.inverse())
            };
        }
        out
    }

    /// Renames generator k to `map[k-1]`, keeping signs.
    pub fn rename(&self, map: &[i32]) -> Word {
        Word(
            self.0
                .iter()
                .map(|&l| {
                    let g = map[l.unsigned_abs() as usize - 1];
                    if l > 0 {
                        g
                    } else {
                        -g
                    }
                })
                .collect(),
        )
    }

    /// Writes a freely reduced word as `u * c * u^-1` with `c` cyclically reduced.
    pub fn cyclic_core(&self) -> (Word, Word) {
        let w = self.reduced().0;
        let mut i = 0;
        let mut j = w.len();
        while j >= i + 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        (Word(w[..i].to_vec()), Word(w[i..j].to_vec()))
    }
}

/// Returns the freely reduced representative of `w`, rejecting letters outside
/// `1..=generator_count`.
pub fn free_reduce(w: &Word, generator_count: usize) -> Result<Word> {
    w.check(generator_count)?;
    Ok(w.reduced())
}

/// Finds `h` with `a = h * b * h^-1` in the free group, if one exists.
pub fn conjugator(a: &Word, b: &Word) -> Option<Word> {
    let (ua, ca) = a.cyclic_core();
    let (ub, cb) = b.cyclic_core();
    if ca.len() != cb.len() {
        return None;
    }
    if ca.is_empty() {
        return Some(Word::identity());
    }
    // ca = r^-1 cb r for a rotation r of cb, i.e. cb = r1 r2 and ca = r2 r1
    let n = cb.len();
    for s in 0..n {
        let rot: Vec<i32> = cb.0[s..].iter().chain(cb.0[..s].iter()).copied().collect();
        if rot == ca.0 {
            let r1 = Word(cb.0[..s].to_vec());
            // a = ua ca ua^-1 = ua r1^-1 cb r1 ua^-1 and cb = ub^-1 b ub
            let h = ua.mul(&r1.inverse()).mul(&ub.inverse());
            return Some(h);
        }
    }
    None
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("g{l}")
                } else {
                    format!("g{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(free_reduce(&Word::new(vec![1, -1]), 2).unwrap(), Word::identity());
        assert_eq!(
            free_reduce(&Word::new(vec![1, 2, -2, 1]), 2).unwrap(),
            Word::new(vec![1, 1])
        );
        assert_eq!(free_reduce(&Word::new(vec![1, 2]), 2).unwrap(), Word::new(vec![1, 2]));
    }

    #[test]
    fn reduce_rejects_bad_letters() {
        assert!(free_reduce(&Word::new(vec![3]), 2).is_err());
        assert!(free_reduce(&Word::new(vec![0]), 2).is_err());
        assert!(free_reduce(&Word::new(vec![-3]), 2).is_err());
    }

    #[test]
    fn conjugator_finds_rotation() {
        let r = Word::new(vec![1, 2, -1, -2]);
        let h = Word::new(vec![2, 1]);
        let a = h.mul(&r.pow(-1)).mul(&h.inverse());
        let rot = Word::new(vec![-1, -2, 1, 2]);
        let g = conjugator(&a, &r.inverse()).unwrap();
        assert_eq!(g.mul(&r.inverse()).mul(&g.inverse()), a);
        assert!(conjugator(&rot, &Word::new(vec![1, 1])).is_none());
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..24).prop_map(Word::new)
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_shrinking(w in word_strategy()) {
            let r = w.reduced();
            prop_assert!(r.len() <= w.len());
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.reduced(), r.clone());
            prop_assert_eq!(w.exponent_sum(&[1, 5, -2]), r.exponent_sum(&[1, 5, -2]));
        }

        #[test]
        fn conjugates_are_detected(w in word_strategy(), h in word_strategy()) {
            let w = w.reduced();
            let a = h.mul(&w).mul(&h.inverse());
            let g = conjugator(&a, &w).expect("conjugate");
            prop_assert_eq!(g.mul(&w).mul(&g.inverse()), a);
        }
    }
}
