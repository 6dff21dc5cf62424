//! Rank recursions for the highest-root q-analogs of types A, B, C and D.
//!
//! Type B is split by whether a partition uses a hooked part (at most one
//! can appear). The nonhooked series satisfies
//!
//! ```text
//! NH(r) = (1+q)^2 NH(r-1) - q^3 (NH(1) + ... + NH(r-2))
//! ```
//!
//! and the hooked series is a linear function of prefix sums of `NH`:
//!
//! ```text
//! H(r) = q + 2 (NH(2) + ... + NH(r-1)) - q^2 sum_{i<=r-2} (NH(1) + ... + NH(i))
//! ```
//!
//! Type C has its own recursion with a `q + q^2 + q^3` correction for the
//! three partitions not produced by extending a smaller rank, and type D is
//! assembled from the type B tables two ranks down.

use crate::qpoly::QPolynomial;
use crate::root_systems::{Family, LieType, RootSystemError};

fn one_plus_q_squared() -> QPolynomial {
    QPolynomial::from_i64s(&[1, 2, 1])
}

fn q_pow(k: usize) -> QPolynomial {
    QPolynomial::monomial(1, k)
}

/// `q * (1 + q)^(r - 1)`.
pub fn p_a(r: u32) -> Result<QPolynomial, RootSystemError> {
    LieType::new(Family::A, r)?;
    Ok(QPolynomial::q() * QPolynomial::from_i64s(&[1, 1]).pow(r - 1))
}

pub fn pnh_b(r: u32) -> Result<QPolynomial, RootSystemError> {
    RecurrenceTable::new().pnh_b(r)
}

pub fn ph_b(r: u32) -> Result<QPolynomial, RootSystemError> {
    RecurrenceTable::new().ph_b(r)
}

pub fn p_b(r: u32) -> Result<QPolynomial, RootSystemError> {
    RecurrenceTable::new().p_b(r)
}

pub fn p_c(r: u32) -> Result<QPolynomial, RootSystemError> {
    RecurrenceTable::new().p_c(r)
}

pub fn p_d(r: u32) -> Result<QPolynomial, RootSystemError> {
    RecurrenceTable::new().p_d(r)
}

/// Append-only cache of the recursion tables. Index 0 of every vector is an
/// unused zero so ranks index directly.
///
/// A table is filled through `&mut self`; once populated it can be shared
/// immutably across threads and read through [`RecurrenceTable::get`].
#[derive(Debug, Clone)]
pub struct RecurrenceTable {
    nh: Vec<QPolynomial>,
    h: Vec<QPolynomial>,
    /// `nh_prefix[k] = NH(1) + ... + NH(k)`
    nh_prefix: Vec<QPolynomial>,
    /// `nh_prefix2[k] = nh_prefix[1] + ... + nh_prefix[k]`
    nh_prefix2: Vec<QPolynomial>,
    c: Vec<QPolynomial>,
    c_prefix: Vec<QPolynomial>,
}

impl Default for RecurrenceTable {
    fn default() -> Self {
        Self::new()
    }
}

impl RecurrenceTable {
    pub fn new() -> Self {
        let z = || vec![QPolynomial::zero()];
        Self {
            nh: z(),
            h: z(),
            nh_prefix: z(),
            nh_prefix2: z(),
            c: z(),
            c_prefix: z(),
        }
    }

    /// Highest rank for which the type B tables are populated.
    pub fn b_rank(&self) -> u32 {
        (self.nh.len() - 1) as u32
    }

    pub fn c_rank(&self) -> u32 {
        (self.c.len() - 1) as u32
    }

    fn extend_b(&mut self, r: usize) {
        while self.nh.len() <= r {
            let k = self.nh.len();
            let (nh, h) = match k {
                1 => (QPolynomial::q(), QPolynomial::zero()),
                2 => (QPolynomial::from_i64s(&[0, 0, 1, 1]), QPolynomial::q()),
                _ => {
                    let nh = &(&one_plus_q_squared() * &self.nh[k - 1])
                        - &(&q_pow(3) * &self.nh_prefix[k - 2]);
                    let twice_tail = (&self.nh_prefix[k - 1] - &self.nh[1]).scale(&2.into());
                    let h =
                        &(&QPolynomial::q() + &twice_tail) - &(&q_pow(2) * &self.nh_prefix2[k - 2]);
                    (nh, h)
                }
            };
            let prefix = &self.nh_prefix[k - 1] + &nh;
            let prefix2 = &self.nh_prefix2[k - 1] + &prefix;
            self.nh.push(nh);
            self.h.push(h);
            self.nh_prefix.push(prefix);
            self.nh_prefix2.push(prefix2);
        }
    }

    fn extend_c(&mut self, r: usize) {
        while self.c.len() <= r {
            let k = self.c.len();
            let c = match k {
                1 => QPolynomial::q(),
                2 => QPolynomial::from_i64s(&[0, 1, 1, 1]),
                _ => {
                    let shifted = &self.c[k - 1] - &QPolynomial::q();
                    &(&(&one_plus_q_squared() * &shifted) - &(&q_pow(3) * &self.c_prefix[k - 2]))
                        + &QPolynomial::from_i64s(&[0, 1, 1, 1])
                }
            };
            let prefix = &self.c_prefix[k - 1] + &c;
            self.c.push(c);
            self.c_prefix.push(prefix);
        }
    }

    /// Nonhooked part of type B.
    pub fn pnh_b(&mut self, r: u32) -> Result<QPolynomial, RootSystemError> {
        LieType::new(Family::B, r)?;
        self.extend_b(r as usize);
        Ok(self.nh[r as usize].clone())
    }

    /// Hooked part of type B.
    pub fn ph_b(&mut self, r: u32) -> Result<QPolynomial, RootSystemError> {
        LieType::new(Family::B, r)?;
        self.extend_b(r as usize);
        Ok(self.h[r as usize].clone())
    }

    pub fn p_b(&mut self, r: u32) -> Result<QPolynomial, RootSystemError> {
        LieType::new(Family::B, r)?;
        self.extend_b(r as usize);
        Ok(&self.h[r as usize] + &self.nh[r as usize])
    }

    pub fn p_c(&mut self, r: u32) -> Result<QPolynomial, RootSystemError> {
        LieType::new(Family::C, r)?;
        self.extend_c(r as usize);
        Ok(self.c[r as usize].clone())
    }

    /// `D(k+2) = H(k) + q^2 NH(k) + (2q+2)(2 NH(k) - q^2 (NH(1) + ... + NH(k-1)))`
    pub fn p_d(&mut self, r: u32) -> Result<QPolynomial, RootSystemError> {
        LieType::new(Family::D, r)?;
        let k = (r - 2) as usize;
        self.extend_b(k);
        let nh = &self.nh[k];
        let inner = &nh.scale(&2.into()) - &(&q_pow(2) * &self.nh_prefix[k - 1]);
        Ok(&(&self.h[k] + &(&q_pow(2) * nh)) + &(&QPolynomial::from_i64s(&[2, 2]) * &inner))
    }

    pub fn value(&mut self, t: LieType) -> QPolynomial {
        let r = t.rank();
        let out = match t.family() {
            Family::A => p_a(r),
            Family::B => self.p_b(r),
            Family::C => self.p_c(r),
            Family::D => self.p_d(r),
        };
        out.expect("LieType carries a valid rank")
    }

    /// Read-only lookup; `None` when the needed entries are not yet populated.
    pub fn get(&self, t: LieType) -> Option<QPolynomial> {
        let r = t.rank() as usize;
        match t.family() {
            Family::A => p_a(t.rank()).ok(),
            Family::B => (r < self.nh.len()).then(|| &self.h[r] + &self.nh[r]),
            Family::C => self.c.get(r).cloned(),
            Family::D => {
                let k = r - 2;
                if k >= self.nh.len() {
                    return None;
                }
                let nh = &self.nh[k];
                let inner = &nh.scale(&2.into()) - &(&q_pow(2) * &self.nh_prefix[k - 1]);
                Some(
                    &(&self.h[k] + &(&q_pow(2) * nh))
                        + &(&QPolynomial::from_i64s(&[2, 2]) * &inner),
                )
            }
        }
    }
}
