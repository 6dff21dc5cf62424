//! Cross-method verification: evaluate several routes over a range of ranks
//! and report exact agreement or the smallest rank where two routes differ.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{constants, ClosedFormConstants};
use crate::genfun::{genfun_for, IntRationalFunction, Variant};
use crate::oracle::count_partitions_q_until;
use crate::qpoly::QPolynomial;
use crate::recurrences::RecurrenceTable;
use crate::root_systems::{highest_root, positive_roots, Family, LieType, RootSystemError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    Recurrence,
    Genfun,
    ClosedForm,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Oracle,
        Method::Recurrence,
        Method::Genfun,
        Method::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Recurrence => "recurrence",
            Method::Genfun => "genfun",
            Method::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown method `{0}`; expected oracle, recurrence, genfun or closed")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "oracle" => Ok(Method::Oracle),
            "recurrence" => Ok(Method::Recurrence),
            "genfun" => Ok(Method::Genfun),
            "closed" | "closed_form" => Ok(Method::ClosedForm),
            other => Err(UnknownMethod(other.to_owned())),
        }
    }
}

/// Highest rank per family at which the oracle is attempted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            a: 16,
            b: 12,
            c: 12,
            d: 12,
        }
    }
}

impl OracleBudget {
    pub fn uniform(rank: u32) -> Self {
        Self {
            a: rank,
            b: rank,
            c: rank,
            d: rank,
        }
    }

    pub fn get(&self, family: Family) -> u32 {
        match family {
            Family::A => self.a,
            Family::B => self.b,
            Family::C => self.c,
            Family::D => self.d,
        }
    }

    pub fn set(&mut self, family: Family, rank: u32) {
        match family {
            Family::A => self.a = rank,
            Family::B => self.b = rank,
            Family::C => self.c = rank,
            Family::D => self.d = rank,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub oracle_budget: OracleBudget,
    /// Wall-clock cap for one oracle evaluation; overruns become skips.
    pub oracle_deadline: Option<Duration>,
    /// Evaluate rank points on the rayon pool.
    pub parallel: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            oracle_budget: OracleBudget::default(),
            oracle_deadline: Some(Duration::from_secs(120)),
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub rank: u32,
    pub methods: [Method; 2],
    pub left: QPolynomial,
    pub right: QPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub rank: u32,
    pub method: Method,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankValue {
    pub rank: u32,
    pub value: QPolynomial,
}

/// Outcome of one verification run. `status` is `Pass` exactly when
/// `discrepancy` is absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: Family,
    pub rank_range: [u32; 2],
    pub methods: Vec<Method>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
    pub skips: Vec<Skip>,
    /// The agreed value at each rank checked before any discrepancy.
    pub values: Vec<RankValue>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn value_at(&self, rank: u32) -> Option<&QPolynomial> {
        self.values
            .iter()
            .find(|v| v.rank == rank)
            .map(|v| &v.value)
    }
}

/// Something that can produce a value for a method at a rank. `Err` carries
/// the reason the point is skipped.
pub trait MethodSource: Sync {
    fn evaluate(&self, method: Method, t: LieType) -> Result<QPolynomial, String>;
}

/// The four routes of this crate, with tables precomputed up to a rank.
pub struct StandardSource {
    family: Family,
    table: RecurrenceTable,
    series: Option<Vec<QPolynomial>>,
    closed: ClosedFormConstants,
    config: VerifyConfig,
}

impl StandardSource {
    pub fn prepare(family: Family, max_rank: u32, config: VerifyConfig) -> Self {
        let mut table = RecurrenceTable::new();
        if let Ok(t) = LieType::new(family, max_rank) {
            table.value(t);
        }
        let series = genfun_for(family, Variant::Full)
            .ok()
            .map(|g| g.expand(max_rank as usize));
        Self {
            family,
            table,
            series,
            closed: constants(),
            config,
        }
    }
}

impl MethodSource for StandardSource {
    fn evaluate(&self, method: Method, t: LieType) -> Result<QPolynomial, String> {
        debug_assert_eq!(t.family(), self.family);
        match method {
            Method::Oracle => {
                let budget = self.config.oracle_budget.get(t.family());
                if t.rank() > budget {
                    return Err(format!("rank above oracle budget {budget}"));
                }
                let deadline = self
                    .config
                    .oracle_deadline
                    .map(|d| Instant::now() + d)
                    .unwrap_or_else(|| Instant::now() + Duration::from_secs(u32::MAX as u64));
                count_partitions_q_until(&positive_roots(t), &highest_root(t), deadline)
                    .ok_or_else(|| "oracle exceeded its wall-clock limit".to_owned())
            }
            Method::Recurrence => self
                .table
                .get(t)
                .ok_or_else(|| format!("recurrence table not populated to rank {}", t.rank())),
            Method::Genfun => {
                let series = self
                    .series
                    .as_ref()
                    .ok_or_else(|| format!("no generating function for type {}", t.family()))?;
                series
                    .get(t.rank() as usize - 1)
                    .cloned()
                    .ok_or_else(|| format!("series not expanded to rank {}", t.rank()))
            }
            Method::ClosedForm => self.closed.value(t).map_err(|e| e.to_string()),
        }
    }
}

/// Runs every selected method of the standard source at ranks
/// `min_rank..=max_rank`.
pub fn verify_family(
    family: Family,
    max_rank: u32,
    methods: &[Method],
    config: &VerifyConfig,
) -> Result<VerificationReport, RootSystemError> {
    let source = StandardSource::prepare(family, max_rank, config.clone());
    verify_family_with(&source, family, max_rank, methods, config.parallel)
}

pub fn verify_family_with(
    source: &dyn MethodSource,
    family: Family,
    max_rank: u32,
    methods: &[Method],
    parallel: bool,
) -> Result<VerificationReport, RootSystemError> {
    LieType::new(family, max_rank)?;
    let methods: Vec<Method> = methods
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let lo = family.min_rank();
    let eval_rank = |rank: u32| {
        let t = LieType::new(family, rank).expect("rank within range");
        let results: Vec<(Method, Result<QPolynomial, String>)> = methods
            .iter()
            .map(|&m| (m, source.evaluate(m, t)))
            .collect();
        (rank, results)
    };
    let per_rank: Vec<_> = if parallel {
        (lo..=max_rank).into_par_iter().map(eval_rank).collect()
    } else {
        (lo..=max_rank).map(eval_rank).collect()
    };
    Ok(assemble(family, [lo, max_rank], methods, per_rank))
}

type RankResults = (u32, Vec<(Method, Result<QPolynomial, String>)>);

/// Folds per-rank results into a report. Ranks are scanned in ascending
/// order, so the recorded discrepancy is at the smallest failing rank.
fn assemble(
    family: Family,
    rank_range: [u32; 2],
    methods: Vec<Method>,
    mut per_rank: Vec<RankResults>,
) -> VerificationReport {
    per_rank.sort_by_key(|(rank, _)| *rank);
    let mut skips = Vec::new();
    let mut values = Vec::new();
    let mut discrepancy = None;
    for (rank, results) in per_rank {
        let mut reference: Option<(Method, QPolynomial)> = None;
        for (method, result) in results {
            match result {
                Err(reason) => skips.push(Skip {
                    rank,
                    method,
                    reason,
                }),
                Ok(value) => match &reference {
                    None => reference = Some((method, value)),
                    Some((ref_method, ref_value)) => {
                        if discrepancy.is_none() && *ref_value != value {
                            discrepancy = Some(Discrepancy {
                                rank,
                                methods: [*ref_method, method],
                                left: ref_value.clone(),
                                right: value,
                            });
                        }
                    }
                },
            }
        }
        if discrepancy.is_none() {
            if let Some((_, value)) = reference {
                values.push(RankValue { rank, value });
            }
        }
    }
    VerificationReport {
        family,
        rank_range,
        methods,
        status: if discrepancy.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        discrepancy,
        skips,
        values,
    }
}

/// The integer sequences at `q = 1` for types B, C and D, checked against
/// rational functions in `x`. For B and C those are the integer
/// generating functions `(x - 2x^2 + x^3)/(1 - 5x + 5x^2)` and
/// `(x - 2x^2)/(1 - 5x + 5x^2)`; for D it is the `q = 1` specialization of
/// the D series. Type D is included only when `max_rank >= 4`.
pub fn verify_q1_sequences(max_rank: u32) -> Result<Vec<VerificationReport>, RootSystemError> {
    if max_rank < 2 {
        return Err(RootSystemError::InvalidRank {
            family: Family::B,
            min: 2,
        });
    }
    let mut table = RecurrenceTable::new();
    let mut reports = Vec::new();
    for family in [Family::B, Family::C, Family::D] {
        if max_rank < family.min_rank() {
            continue;
        }
        let integer_gf = match family {
            Family::B => IntRationalFunction::from_i64s(&[0, 1, -2, 1], &[1, -5, 5]),
            Family::C => IntRationalFunction::from_i64s(&[0, 1, -2], &[1, -5, 5]),
            _ => genfun_for(family, Variant::Full)
                .expect("every family but A has a series")
                .specialize_q1(),
        };
        let expansion = integer_gf.expand(max_rank as usize);
        let per_rank = (family.min_rank()..=max_rank)
            .map(|rank| {
                let t = LieType::new(family, rank).expect("rank within range");
                let from_recurrence = QPolynomial::constant(table.value(t).eval_one());
                let from_gf = QPolynomial::constant(expansion[rank as usize - 1].clone());
                (
                    rank,
                    vec![
                        (Method::Recurrence, Ok(from_recurrence)),
                        (Method::Genfun, Ok(from_gf)),
                    ],
                )
            })
            .collect();
        reports.push(assemble(
            family,
            [family.min_rank(), max_rank],
            vec![Method::Recurrence, Method::Genfun],
            per_rank,
        ));
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn quick_config() -> VerifyConfig {
        VerifyConfig {
            oracle_budget: OracleBudget::uniform(8),
            ..VerifyConfig::default()
        }
    }

    /// Wraps the standard source and adds 1 to recurrence values from a rank on.
    struct Faulty<'a> {
        inner: &'a StandardSource,
        from_rank: u32,
    }

    impl MethodSource for Faulty<'_> {
        fn evaluate(&self, method: Method, t: LieType) -> Result<QPolynomial, String> {
            let v = self.inner.evaluate(method, t)?;
            if method == Method::Recurrence && t.rank() >= self.from_rank {
                return Ok(&v + &QPolynomial::one());
            }
            Ok(v)
        }
    }

    #[test]
    fn all_methods_agree_on_small_ranks() {
        for family in Family::ALL {
            let report = verify_family(family, 8, &Method::ALL, &quick_config()).unwrap();
            assert!(report.passed(), "{}", report.to_json());
            assert!(report.discrepancy.is_none());
        }
    }

    #[test]
    fn d5_recurrence_vs_closed() {
        let report = verify_family(
            Family::D,
            5,
            &[Method::Recurrence, Method::ClosedForm],
            &quick_config(),
        )
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.rank_range, [4, 5]);
        assert_eq!(
            report.value_at(5),
            Some(&QPolynomial::from_i64s(&[0, 1, 6, 15, 17, 11, 4, 1]))
        );
    }

    #[test]
    fn c1_base() {
        let report = verify_family(
            Family::C,
            1,
            &[Method::Recurrence, Method::ClosedForm, Method::Genfun],
            &quick_config(),
        )
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.value_at(1), Some(&QPolynomial::q()));
        assert!(report.skips.is_empty());
    }

    #[test]
    fn skips_are_recorded() {
        let report = verify_family(Family::B, 10, &Method::ALL, &quick_config()).unwrap();
        assert!(report.passed());
        let oracle_skips: Vec<u32> = report
            .skips
            .iter()
            .filter(|s| s.method == Method::Oracle)
            .map(|s| s.rank)
            .collect();
        assert_eq!(oracle_skips, vec![9, 10]);
        assert!(report
            .skips
            .iter()
            .any(|s| s.method == Method::ClosedForm && s.rank == 1));
        let a = verify_family(Family::A, 4, &Method::ALL, &quick_config()).unwrap();
        assert!(a.passed());
        assert_eq!(a.skips.len(), 8);
    }

    #[test]
    fn injected_fault_reports_minimal_rank() {
        let config = quick_config();
        let inner = StandardSource::prepare(Family::C, 9, config.clone());
        let faulty = Faulty {
            inner: &inner,
            from_rank: 5,
        };
        let report = verify_family_with(&faulty, Family::C, 9, &Method::ALL, true).unwrap();
        assert_eq!(report.status, Status::Fail);
        let d = report.discrepancy.as_ref().unwrap();
        assert_eq!(d.rank, 5);
        assert_eq!(d.methods, [Method::Oracle, Method::Recurrence]);
        assert_eq!(&d.right - &d.left, QPolynomial::one());
        assert_eq!(report.values.len(), 4);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_family(Family::B, 9, &Method::ALL, &quick_config()).unwrap();
        let b = verify_family(
            Family::B,
            9,
            &[
                Method::ClosedForm,
                Method::Genfun,
                Method::Recurrence,
                Method::Oracle,
            ],
            &VerifyConfig {
                parallel: false,
                ..quick_config()
            },
        )
        .unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let back: VerificationReport = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn oracle_deadline_becomes_skip() {
        let config = VerifyConfig {
            oracle_budget: OracleBudget::uniform(12),
            oracle_deadline: Some(Duration::ZERO),
            parallel: false,
        };
        let report = verify_family(
            Family::B,
            11,
            &[Method::Oracle, Method::Recurrence],
            &config,
        )
        .unwrap();
        assert!(report.passed());
        assert!(report
            .skips
            .iter()
            .any(|s| s.method == Method::Oracle && s.reason.contains("wall-clock")));
    }

    #[test]
    fn invalid_max_rank() {
        assert!(verify_family(Family::D, 3, &Method::ALL, &quick_config()).is_err());
        assert!(verify_q1_sequences(1).is_err());
    }

    #[test]
    fn q1_prefixes() {
        let reports = verify_q1_sequences(20).unwrap();
        assert_eq!(reports.len(), 3);
        let prefix = |r: &VerificationReport, n: usize| -> Vec<BigInt> {
            r.values.iter().take(n).map(|v| v.value.coeff(0)).collect()
        };
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(reports.iter().all(VerificationReport::passed));
        assert_eq!(prefix(&reports[0], 6), ints(&[1, 3, 11, 40, 145, 525]));
        assert_eq!(prefix(&reports[1], 6), ints(&[1, 3, 10, 35, 125, 450]));
        assert_eq!(prefix(&reports[2], 2), ints(&[15, 55]));
    }

    #[test]
    fn method_names_parse() {
        assert_eq!("closed".parse::<Method>().unwrap(), Method::ClosedForm);
        assert_eq!("closed_form".parse::<Method>().unwrap(), Method::ClosedForm);
        assert!("magic".parse::<Method>().is_err());
        assert_eq!(
            serde_json::to_string(&Method::ClosedForm).unwrap(),
            "\"closed_form\""
        );
    }
}
