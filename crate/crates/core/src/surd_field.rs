//! Exact arithmetic in the rational function field `Q(q)` and its quadratic
//! extension `Q(q)(s)` with `s^2 = q^2 + 4`.
//!
//! Every value is kept fully reduced after every operation, so structural
//! equality coincides with equality in the field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::qpoly::QPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
}

/// A surd element that does not collapse to a polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a polynomial: rational part {rat}, surd part {surd}")]
pub struct NotPolynomial {
    pub rat: RationalQ,
    pub surd: RationalQ,
}

/// `s^2`, the radicand `q^2 + 4`.
pub fn radicand() -> QPolynomial {
    QPolynomial::from_i64s(&[4, 0, 1])
}

/// A reduced quotient `num / den` of integer polynomials.
///
/// Canonical form: `gcd(num, den)` is a unit in `Z[q]`, the integer contents
/// of `num` and `den` are coprime and `den` has positive leading coefficient.
/// Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalQ {
    num: QPolynomial,
    den: QPolynomial,
}

impl RationalQ {
    pub fn new(num: QPolynomial, den: QPolynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn zero() -> Self {
        Self {
            num: QPolynomial::zero(),
            den: QPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPolynomial::one())
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        Self {
            num: p,
            den: QPolynomial::one(),
        }
    }

    pub fn num(&self) -> &QPolynomial {
        &self.num
    }

    pub fn den(&self) -> &QPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(mut num: QPolynomial, mut den: QPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if !den.is_constant() && !num.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        Self { num, den }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// The polynomial equal to `self`, if `den` divides `num` in `Z[q]`.
    pub fn to_polynomial(&self) -> Option<QPolynomial> {
        self.num.div_exact(&self.den)
    }
}

impl<'a> Add<&'a RationalQ> for &RationalQ {
    type Output = RationalQ;

    fn add(self, rhs: &'a RationalQ) -> RationalQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalQ::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalQ::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalQ> for &RationalQ {
    type Output = RationalQ;

    fn sub(self, rhs: &'a RationalQ) -> RationalQ {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalQ> for &RationalQ {
    type Output = RationalQ;

    fn mul(self, rhs: &'a RationalQ) -> RationalQ {
        if self.is_zero() || rhs.is_zero() {
            return RationalQ::zero();
        }
        RationalQ::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalQ {
    type Output = RationalQ;

    fn neg(self) -> RationalQ {
        RationalQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{})", self.num, self.den)
    }
}

/// `rat + surd * s` with `s^2 = q^2 + 4`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SurdElement {
    rat: RationalQ,
    surd: RationalQ,
}

impl SurdElement {
    pub fn new(rat: RationalQ, surd: RationalQ) -> Self {
        Self { rat, surd }
    }

    pub fn zero() -> Self {
        Self::new(RationalQ::zero(), RationalQ::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(QPolynomial::one())
    }

    /// The generator `s = sqrt(q^2 + 4)`.
    pub fn s() -> Self {
        Self::new(RationalQ::zero(), RationalQ::one())
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        Self::new(RationalQ::from_poly(p), RationalQ::zero())
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_poly(QPolynomial::from_i64s(coeffs))
    }

    /// `(a + b s) / c` for integer polynomials `a`, `b`, `c`.
    pub fn from_parts(a: QPolynomial, b: QPolynomial, c: QPolynomial) -> Result<Self, FieldError> {
        Ok(Self::new(
            RationalQ::new(a, c.clone())?,
            RationalQ::new(b, c)?,
        ))
    }

    pub fn rat(&self) -> &RationalQ {
        &self.rat
    }

    pub fn surd(&self) -> &RationalQ {
        &self.surd
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    /// The image under `s -> -s`.
    pub fn conj(&self) -> Self {
        Self::new(self.rat.clone(), -&self.surd)
    }

    /// `self * conj(self) = rat^2 - surd^2 (q^2 + 4)`, an element of `Q(q)`.
    pub fn norm(&self) -> RationalQ {
        let radicand = RationalQ::from_poly(radicand());
        &(&self.rat * &self.rat) - &(&(&self.surd * &self.surd) * &radicand)
    }

    /// Multiplicative inverse via the conjugate. Only zero fails, since
    /// `q^2 + 4` is not a square in `Q(q)`.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n_inv = self.norm().inv()?;
        Ok(Self::new(&self.rat * &n_inv, &(-&self.surd) * &n_inv))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True iff the surd part vanishes and the rational part is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.surd.is_zero() && self.rat.to_polynomial().is_some()
    }

    pub fn to_polynomial(&self) -> Result<QPolynomial, NotPolynomial> {
        let not_poly = || NotPolynomial {
            rat: self.rat.clone(),
            surd: self.surd.clone(),
        };
        if !self.surd.is_zero() {
            return Err(not_poly());
        }
        self.rat.to_polynomial().ok_or_else(not_poly)
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = RationalQ::from_poly(QPolynomial::constant(BigInt::from(c)));
        Self::new(&self.rat * &c, &self.surd * &c)
    }
}

impl<'a> Add<&'a SurdElement> for &SurdElement {
    type Output = SurdElement;

    fn add(self, rhs: &'a SurdElement) -> SurdElement {
        SurdElement::new(&self.rat + &rhs.rat, &self.surd + &rhs.surd)
    }
}

impl<'a> Sub<&'a SurdElement> for &SurdElement {
    type Output = SurdElement;

    fn sub(self, rhs: &'a SurdElement) -> SurdElement {
        SurdElement::new(&self.rat - &rhs.rat, &self.surd - &rhs.surd)
    }
}

impl<'a> Mul<&'a SurdElement> for &SurdElement {
    type Output = SurdElement;

    fn mul(self, rhs: &'a SurdElement) -> SurdElement {
        let radicand = RationalQ::from_poly(radicand());
        let ss = &(&self.surd * &rhs.surd) * &radicand;
        SurdElement::new(
            &(&self.rat * &rhs.rat) + &ss,
            &(&self.rat * &rhs.surd) + &(&self.surd * &rhs.rat),
        )
    }
}

impl Neg for &SurdElement {
    type Output = SurdElement;

    fn neg(self) -> SurdElement {
        SurdElement::new(-&self.rat, -&self.surd)
    }
}

impl fmt::Display for SurdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}*s", self.rat, self.surd)
    }
}

impl fmt::Debug for SurdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
