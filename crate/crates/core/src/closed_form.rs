//! Explicit two-term formulas over `Q(q)(s)`, `s = sqrt(q^2 + 4)`:
//!
//! ```text
//! B_r = alpha1 beta1^(r-2) + alpha2 beta2^(r-2)   (r >= 2)
//! C_r = gamma1 beta1^(r-1) + gamma2 beta2^(r-1)   (r >= 1)
//! D_r = delta1 beta1^(r-4) + delta2 beta2^(r-4)   (r >= 4)
//! ```
//!
//! `beta1`, `beta2` are the roots of `L^2 - (2+2q+q^2) L + (1+2q+q^2+q^3)`.
//! Each combination is conjugation-invariant, so its surd part vanishes and
//! it collapses to a polynomial; [`ClosedFormConstants::combination`]
//! exposes the uncollapsed element so callers can check this.
//!
//! `alpha2` is the conjugate of `alpha1`. Writing `sqrt(q^2 - 4)` for any
//! of its surd factors breaks `alpha1 + alpha2 = B_2` and
//! `alpha1 beta1 + alpha2 beta2 = B_3`, so every factor uses `s`.

use crate::qpoly::QPolynomial;
use crate::root_systems::{Family, LieType, RootSystemError};
use crate::surd_field::{NotPolynomial, SurdElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosedFormError {
    #[error(transparent)]
    InvalidRank(#[from] RootSystemError),
    #[error("no closed formula for {0}; B needs rank >= 2, C rank >= 1, D rank >= 4")]
    OutOfRange(LieType),
    #[error("no closed formula for type {0}")]
    UnsupportedFamily(Family),
    /// Internal inconsistency: a closed formula failed to collapse.
    #[error("closed formula did not collapse to a polynomial: {0}")]
    NotPolynomial(#[from] NotPolynomial),
}

/// `a(q) + b(q) s`
fn lin(a: &[i64], b: &[i64]) -> SurdElement {
    &SurdElement::from_i64s(a) + &(&SurdElement::from_i64s(b) * &SurdElement::s())
}

fn qk(k: usize) -> SurdElement {
    SurdElement::from_poly(QPolynomial::monomial(1, k))
}

fn div(a: &SurdElement, b: &SurdElement) -> SurdElement {
    a.div(b).expect("constant denominators are nonzero")
}

/// The eight constants, each in canonical `a + b s` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormConstants {
    pub beta1: SurdElement,
    pub beta2: SurdElement,
    pub alpha1: SurdElement,
    pub alpha2: SurdElement,
    pub gamma1: SurdElement,
    pub gamma2: SurdElement,
    pub delta1: SurdElement,
    pub delta2: SurdElement,
}

impl Default for ClosedFormConstants {
    fn default() -> Self {
        constants()
    }
}

pub fn constants() -> ClosedFormConstants {
    let s = SurdElement::s();
    let q = qk(1);
    let two = SurdElement::from_i64s(&[2]);
    // 2 (q^2 + 4)
    let two_rad = SurdElement::from_i64s(&[8, 0, 2]);
    let two_s = &two * &s;
    let beta_base = SurdElement::from_i64s(&[2, 2, 1]);

    let beta1 = div(&(&beta_base + &(&q * &s)), &two);
    let beta2 = div(&(&beta_base - &(&q * &s)), &two);

    // q^4 + q^3 (s + 1) + q^2 (s + 5) + q (3s + 4) + 2 (s + 2)
    let alpha1_num = [
        qk(4),
        &qk(3) * &lin(&[1], &[1]),
        &qk(2) * &lin(&[5], &[1]),
        &q * &lin(&[4], &[3]),
        &two * &lin(&[2], &[1]),
    ]
    .iter()
    .fold(SurdElement::zero(), |acc, t| &acc + t);
    // q^4 - q^3 (s - 1) - q^2 (s - 5) + q (4 - 3s) - 2 (s - 2)
    let alpha2_num = [
        qk(4),
        -&(&qk(3) * &lin(&[-1], &[1])),
        -&(&qk(2) * &lin(&[-5], &[1])),
        &q * &lin(&[4], &[-3]),
        -&(&two * &lin(&[-2], &[1])),
    ]
    .iter()
    .fold(SurdElement::zero(), |acc, t| &acc + t);
    let alpha1 = &q * &div(&alpha1_num, &two_rad);
    let alpha2 = &q * &div(&alpha2_num, &two_rad);

    let gamma1 = div(
        &(&q * &(&qk(2) + &(&(&q * &s) + &SurdElement::from_i64s(&[4])))),
        &two_rad,
    );
    let gamma2 = div(
        &(&q * &(&(&qk(2) - &(&q * &s)) + &SurdElement::from_i64s(&[4]))),
        &two_rad,
    );

    let delta_a = SurdElement::from_i64s(&[2, 9, 12, 8, 3, 1]);
    let delta_b = SurdElement::from_i64s(&[1, 4, 6, 3, 1]);
    let delta1 = &q * &div(&(&delta_a + &(&delta_b * &s)), &two_s);
    let delta2 = &q * &div(&(&(-&delta_a) + &(&delta_b * &s)), &two_s);

    ClosedFormConstants {
        beta1,
        beta2,
        alpha1,
        alpha2,
        gamma1,
        gamma2,
        delta1,
        delta2,
    }
}

impl ClosedFormConstants {
    /// `c1 beta1^k + c2 beta2^k` for the family of `t`, before collapse.
    pub fn combination(&self, t: LieType) -> Result<SurdElement, ClosedFormError> {
        let r = t.rank();
        let (c1, c2, k) = match t.family() {
            Family::A => return Err(ClosedFormError::UnsupportedFamily(Family::A)),
            Family::B if r >= 2 => (&self.alpha1, &self.alpha2, r - 2),
            Family::C => (&self.gamma1, &self.gamma2, r - 1),
            Family::D => (&self.delta1, &self.delta2, r - 4),
            Family::B => return Err(ClosedFormError::OutOfRange(t)),
        };
        Ok(&(c1 * &self.beta1.pow(k)) + &(c2 * &self.beta2.pow(k)))
    }

    pub fn value(&self, t: LieType) -> Result<QPolynomial, ClosedFormError> {
        Ok(self.combination(t)?.to_polynomial()?)
    }
}

/// Closed-formula value for `family` at `rank`.
pub fn closed_value(family: Family, rank: u32) -> Result<QPolynomial, ClosedFormError> {
    let t = LieType::new(family, rank)?;
    constants().value(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd_field::RationalQ;

    fn p(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(c)
    }

    fn poly_of(x: &SurdElement) -> QPolynomial {
        x.to_polynomial().unwrap()
    }

    #[test]
    fn beta_root_relations() {
        let k = constants();
        assert_eq!(poly_of(&(&k.beta1 * &k.beta2)), p(&[1, 2, 1, 1]));
        assert_eq!(poly_of(&(&k.beta1 + &k.beta2)), p(&[2, 2, 1]));
        assert_eq!(
            &k.beta1 - &k.beta2,
            &SurdElement::from_i64s(&[0, 1]) * &SurdElement::s()
        );
        assert_eq!(k.beta1.conj(), k.beta2);
    }

    #[test]
    fn linear_systems() {
        let k = constants();
        assert_eq!(poly_of(&(&k.alpha1 + &k.alpha2)), p(&[0, 1, 1, 1]));
        assert_eq!(
            poly_of(&(&(&k.alpha1 * &k.beta1) + &(&k.alpha2 * &k.beta2))),
            p(&[0, 1, 3, 4, 2, 1])
        );
        assert_eq!(poly_of(&(&k.gamma1 + &k.gamma2)), QPolynomial::q());
        assert_eq!(
            poly_of(&(&(&k.gamma1 * &k.beta1) + &(&k.gamma2 * &k.beta2))),
            p(&[0, 1, 1, 1])
        );
        assert_eq!(poly_of(&(&k.delta1 + &k.delta2)), p(&[0, 1, 4, 6, 3, 1]));
        assert_eq!(
            poly_of(&(&(&k.delta1 * &k.beta1) + &(&k.delta2 * &k.beta2))),
            p(&[0, 1, 6, 15, 17, 11, 4, 1])
        );
    }

    #[test]
    fn gamma1_canonical_form() {
        // (q (q^2 + 4) + q^2 s) / (2 (q^2 + 4))
        let expected = SurdElement::new(
            RationalQ::new(p(&[0, 1]), p(&[2])).unwrap(),
            RationalQ::new(p(&[0, 0, 1]), p(&[8, 0, 2])).unwrap(),
        );
        assert_eq!(constants().gamma1, expected);
    }

    #[test]
    fn delta_denominators_are_rationalized() {
        let k = constants();
        for d in [&k.delta1, &k.delta2] {
            assert!(d.rat().den().is_constant());
            assert_eq!(d.surd().den(), &p(&[8, 0, 2]));
        }
    }

    #[test]
    fn alpha_term_orderings_agree() {
        // the same numerator with the q^3 term listed last
        let k = constants();
        let reordered = [
            qk(4),
            &qk(2) * &lin(&[5], &[1]),
            &qk(1) * &lin(&[4], &[3]),
            &SurdElement::from_i64s(&[2]) * &lin(&[2], &[1]),
            &qk(3) * &lin(&[1], &[1]),
        ]
        .iter()
        .fold(SurdElement::zero(), |acc, t| &acc + t);
        let alpha1 = &qk(1) * &div(&reordered, &SurdElement::from_i64s(&[8, 0, 2]));
        assert_eq!(alpha1, k.alpha1);
        assert_eq!(k.alpha1.conj(), k.alpha2);
        assert_eq!(k.gamma1.conj(), k.gamma2);
        assert_eq!(k.delta1.conj(), k.delta2);
    }

    #[test]
    fn closed_value_examples() {
        assert_eq!(closed_value(Family::C, 1).unwrap(), QPolynomial::q());
        assert_eq!(
            closed_value(Family::B, 4).unwrap(),
            p(&[0, 1, 5, 11, 11, 8, 3, 1])
        );
        assert_eq!(
            closed_value(Family::D, 5).unwrap(),
            p(&[0, 1, 6, 15, 17, 11, 4, 1])
        );
    }

    #[test]
    fn closed_value_errors() {
        assert!(matches!(
            closed_value(Family::D, 3),
            Err(ClosedFormError::InvalidRank(_))
        ));
        assert!(matches!(
            closed_value(Family::B, 1),
            Err(ClosedFormError::OutOfRange(_))
        ));
        assert!(matches!(
            closed_value(Family::A, 3),
            Err(ClosedFormError::UnsupportedFamily(Family::A))
        ));
    }

    #[test]
    fn combinations_have_zero_surd_part() {
        let k = constants();
        for (f, lo) in [(Family::B, 2), (Family::C, 1), (Family::D, 4)] {
            for r in lo..=14 {
                let c = k.combination(LieType::new(f, r).unwrap()).unwrap();
                assert!(c.surd().is_zero(), "{f}{r}");
                assert_eq!(c.conj(), c);
            }
        }
    }
}
