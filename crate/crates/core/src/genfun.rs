//! Rational generating functions `sum_r P_r(q) x^r` and their expansion.
//!
//! All in-scope series share the denominator
//! `1 - (2+2q+q^2) x + (1+2q+q^2+q^3) x^2`, so a [`GenFun`] is just a pair of
//! coefficient sequences in `x` whose entries are polynomials in `q`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::qpoly::QPolynomial;
use crate::root_systems::Family;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenFunError {
    #[error("no {variant} generating function for type {family}")]
    UnsupportedVariant { family: Family, variant: Variant },
}

/// Which series of a family to build. The hooked/nonhooked split exists for
/// type B only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    BNonhooked,
    BHooked,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::BNonhooked => "nonhooked",
            Variant::BHooked => "hooked",
        })
    }
}

/// `numerator(x) / denominator(x)` with coefficients in `Z[q]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenFun {
    numerator: Vec<QPolynomial>,
    denominator: Vec<QPolynomial>,
    first_index: u32,
}

fn poly(c: &[i64]) -> QPolynomial {
    QPolynomial::from_i64s(c)
}

/// `1 - (2+2q+q^2) x + (1+2q+q^2+q^3) x^2`
pub fn shared_denominator() -> Vec<QPolynomial> {
    vec![poly(&[1]), poly(&[-2, -2, -1]), poly(&[1, 2, 1, 1])]
}

impl GenFun {
    /// Fails when the denominator's constant term is not 1.
    pub fn new(
        numerator: Vec<QPolynomial>,
        denominator: Vec<QPolynomial>,
        first_index: u32,
    ) -> Option<Self> {
        denominator
            .first()
            .is_some_and(QPolynomial::is_one)
            .then_some(Self {
                numerator,
                denominator,
                first_index,
            })
    }

    pub fn numerator(&self) -> &[QPolynomial] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[QPolynomial] {
        &self.denominator
    }

    /// Smallest rank with a defined value.
    pub fn first_index(&self) -> u32 {
        self.first_index
    }

    /// Coefficients of `x^1, ..., x^n` (entry `k - 1` holds `x^k`), via
    /// `c_k = numerator_k - sum_{j>=1} denominator_j c_{k-j}`.
    pub fn expand(&self, n: usize) -> Vec<QPolynomial> {
        let mut c: Vec<QPolynomial> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut ck = self.numerator.get(k).cloned().unwrap_or_default();
            for (j, d) in self.denominator.iter().enumerate().skip(1).take(k) {
                if !d.is_zero() && !c[k - j].is_zero() {
                    ck -= &(d * &c[k - j]);
                }
            }
            c.push(ck);
        }
        c.remove(0);
        c
    }

    /// The `x^r` coefficient.
    pub fn term(&self, r: usize) -> QPolynomial {
        if r == 0 {
            return self.numerator.first().cloned().unwrap_or_default();
        }
        self.expand(r).pop().unwrap_or_default()
    }

    /// Evaluates every coefficient at `q = 1`, leaving the fraction unreduced.
    pub fn specialize_q1(&self) -> IntRationalFunction {
        let at_one = |v: &[QPolynomial]| v.iter().map(QPolynomial::eval_one).collect();
        IntRationalFunction {
            numerator: at_one(&self.numerator),
            denominator: at_one(&self.denominator),
        }
    }
}

pub fn genfun_for(family: Family, variant: Variant) -> Result<GenFun, GenFunError> {
    let zero = QPolynomial::zero;
    let (numerator, first_index) = match (family, variant) {
        (Family::B, Variant::Full) => (
            vec![zero(), poly(&[0, 1]), poly(&[0, -1, -1]), poly(&[0, 0, 1])],
            1,
        ),
        (Family::B, Variant::BNonhooked) => (
            vec![zero(), poly(&[0, 1]), poly(&[0, -2, -1]), poly(&[0, 1, 1])],
            1,
        ),
        (Family::B, Variant::BHooked) => (vec![zero(), zero(), poly(&[0, 1]), poly(&[0, -1])], 1),
        (Family::C, Variant::Full) => (vec![zero(), poly(&[0, 1]), poly(&[0, -1, -1])], 1),
        (Family::D, Variant::Full) => (
            vec![
                zero(),
                zero(),
                zero(),
                zero(),
                poly(&[0, 1, 4, 6, 3, 1]),
                poly(&[0, -1, -4, -6, -5, -3, -1]),
            ],
            4,
        ),
        (family, variant) => return Err(GenFunError::UnsupportedVariant { family, variant }),
    };
    Ok(GenFun::new(numerator, shared_denominator(), first_index).expect("denominator starts at 1"))
}

/// A rational function in `x` with integer coefficients, kept as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRationalFunction {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

impl IntRationalFunction {
    pub fn from_i64s(numerator: &[i64], denominator: &[i64]) -> Self {
        Self {
            numerator: numerator.iter().map(|&c| BigInt::from(c)).collect(),
            denominator: denominator.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Coefficients of `x^1..x^n`. The denominator's constant term must be 1.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        assert!(
            self.denominator.first().is_some_and(One::is_one),
            "denominator constant term must be 1"
        );
        let mut c: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut ck = self.numerator.get(k).cloned().unwrap_or_default();
            for (j, d) in self.denominator.iter().enumerate().skip(1).take(k) {
                ck -= d * &c[k - j];
            }
            c.push(ck);
        }
        c.remove(0);
        c
    }
}

fn write_x_poly<T, F>(f: &mut fmt::Formatter<'_>, coeffs: &[T], mut term: F) -> fmt::Result
where
    F: FnMut(&mut fmt::Formatter<'_>, &T, bool) -> Result<bool, fmt::Error>,
{
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if !term(f, c, first)? {
            continue;
        }
        first = false;
        match k {
            0 => {}
            1 => f.write_str("x")?,
            _ => write!(f, "x^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// `(<num>)/(<den>)`, terms in descending powers of `x`.
impl fmt::Display for IntRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, v: &[BigInt]| {
            let mut k = v.len();
            write_x_poly(f, v, |f, c, first| {
                k -= 1;
                if c.is_zero() {
                    return Ok(false);
                }
                match (first, c.is_negative()) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                let mag = c.abs();
                if k == 0 || !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                Ok(true)
            })
        };
        f.write_str("(")?;
        side(f, &self.numerator)?;
        f.write_str(")/(")?;
        side(f, &self.denominator)?;
        f.write_str(")")
    }
}

/// `(<num>)/(<den>)` with each `q`-coefficient in canonical order, e.g.
/// `((q^2)x^3 + (-q^2 - q)x^2 + (q)x)/(...)`.
impl fmt::Display for GenFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, v: &[QPolynomial]| {
            let mut k = v.len();
            write_x_poly(f, v, |f, c, first| {
                k -= 1;
                if c.is_zero() {
                    return Ok(false);
                }
                if !first {
                    f.write_str(" + ")?;
                }
                if k == 0 {
                    write!(f, "{c}")?;
                } else if !c.is_one() {
                    write!(f, "({c})")?;
                }
                Ok(true)
            })
        };
        f.write_str("(")?;
        side(f, &self.numerator)?;
        f.write_str(")/(")?;
        side(f, &self.denominator)?;
        f.write_str(")")
    }
}
