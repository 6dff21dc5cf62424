//! Exact computation of the q-analog of Kostant's partition function on the
//! highest root of the classical Lie algebras of types A, B, C and D.
//!
//! Four independent routes produce the same polynomials and are checked
//! against each other by [`verify`]:
//!
//! - [`oracle`]: brute-force counting of multisets of positive roots;
//! - [`recurrences`]: rank recursions with cached prefix sums;
//! - [`genfun`]: expansion of rational generating functions in `x`;
//! - [`closed_form`]: two-term explicit formulas over `Q(q)(sqrt(q^2 + 4))`.
//!
//! ```
//! use kostant_core::{Family, LieType, recurrences::RecurrenceTable};
//!
//! let b4 = RecurrenceTable::new().value(LieType::new(Family::B, 4).unwrap());
//! assert_eq!(b4.to_string(), "q^7 + 3q^6 + 8q^5 + 11q^4 + 11q^3 + 5q^2 + q");
//! ```

pub mod closed_form;
pub mod genfun;
pub mod oracle;
pub mod qpoly;
pub mod recurrences;
pub mod root_systems;
pub mod surd_field;
pub mod verify;

pub use closed_form::{ClosedFormConstants, ClosedFormError};
pub use genfun::{GenFun, IntRationalFunction, Variant};
pub use oracle::{OracleError, PartitionMultiset};
pub use qpoly::{Degree, QPolynomial};
pub use root_systems::{Family, LieType, RootSystemError, RootVector, TargetWeight};
pub use surd_field::{RationalQ, SurdElement};
pub use verify::{Method, VerificationReport, VerifyConfig};
