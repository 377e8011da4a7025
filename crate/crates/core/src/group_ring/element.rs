use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::word::Word;

/// An element of the integral group ring of a free group, i.e. a finite
/// integer combination of freely reduced words.
///
/// Terms are kept in word order with nonzero coefficients, so two elements
/// are equal iff they agree in the free group ring.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::identity())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(BigInt::one(), w)
    }

    pub fn integer(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), Word::identity())
    }

    pub fn monomial(coefficient: BigInt, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(coefficient, w);
        e
    }

    /// `w - 1`, the boundary coefficient of a loop edge.
    pub fn word_minus_one(w: Word) -> Self {
        Self::word(w) - Self::one()
    }

    pub fn from_terms<I: IntoIterator<Item = (BigInt, Word)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (c, w) in terms {
            e.add_term(c, w);
        }
        e
    }

    pub fn add_term(&mut self, coefficient: BigInt, w: Word) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(w.reduced()) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Sum of coefficients.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GroupRingElement {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Applies a map to every word and recombines.
    pub fn map_words<F: FnMut(&Word) -> Word>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.clone(), f(w))))
    }

    /// The involution `sum c_w w  ->  sum c_w w^-1`.
    pub fn conjugate(&self) -> Self {
        self.map_words(|w| w.inverse())
    }

    pub fn mul_word_right(&self, w: &Word) -> Self {
        self.map_words(|u| u.mul(w))
    }

    pub fn mul_word_left(&self, w: &Word) -> Self {
        self.map_words(|u| w.mul(u))
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }
}

impl Add for GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: GroupRingElement) -> GroupRingElement {
        &self + &rhs
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        -&self
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Sub for GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: GroupRingElement) -> GroupRingElement {
        &self - &rhs
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(a * b, u.mul(v));
            }
        }
        out
    }
}

impl Mul for GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: GroupRingElement) -> GroupRingElement {
        &self * &rhs
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
