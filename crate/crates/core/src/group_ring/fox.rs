use num_bigint::BigInt;

use super::element::GroupRingElement;
use super::word::Word;

/// Fox derivative `∂w/∂x_gen` in the free group ring.
pub fn fox_derivative(w: &Word, generator: usize) -> GroupRingElement {
    fox_derivative_mapped(w, generator, None)
}

/// Fox derivative of a word in an auxiliary alphabet (for instance the edges
/// of a cell complex), with each letter then replaced by a word in the group
/// generators. `values[k-1]` is the image of letter k; `None` means identity.
pub fn fox_derivative_mapped(w: &Word, letter: usize, values: Option<&[Word]>) -> GroupRingElement {
    let image = |l: i32| -> Word {
        match values {
            Some(v) => {
                let x = &v[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    x.clone()
                } else {
                    x.inverse()
                }
            }
            None => Word::new(vec![l]),
        }
    };
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        let next = prefix.mul(&image(l));
        if l.unsigned_abs() as usize == letter {
            if l > 0 {
                out.add_term(BigInt::from(1), prefix.clone());
            } else {
                out.add_term(BigInt::from(-1), next.clone());
            }
        }
        prefix = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(l: &[i32]) -> GroupRingElement {
        GroupRingElement::word(Word::new(l.to_vec()))
    }

    #[test]
    fn commutator_derivatives() {
        let r = Word::new(vec![1, 2, -1, -2]);
        // ∂r/∂a = 1 - a b a^-1
        assert_eq!(fox_derivative(&r, 1), e(&[]) - e(&[1, 2, -1]));
        // ∂r/∂b = a - a b a^-1 b^-1
        assert_eq!(fox_derivative(&r, 2), e(&[1]) - e(&[1, 2, -1, -2]));
    }

    #[test]
    fn fundamental_formula_on_trefoil() {
        let r = Word::new(vec![1, 2, 1, -2, -1, -2]);
        let mut total = GroupRingElement::zero();
        for x in 1..=2 {
            total = total + fox_derivative(&r, x) * GroupRingElement::word_minus_one(Word::generator(x));
        }
        assert_eq!(total, GroupRingElement::word_minus_one(r));
    }
}
