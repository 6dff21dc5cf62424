//! Output formatting. JSON coefficients are decimal strings, lowest degree
//! first; CSV coefficient columns `c0, c1, ...` are in ascending degree.

use std::io::{self, Write};

use clap::ValueEnum;
use kostant_core::verify::Status;
use kostant_core::{
    Degree, Family, LieType, Method, PartitionMultiset, QPolynomial, VerificationReport,
};
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

fn degree_json(p: &QPolynomial) -> Value {
    match p.degree() {
        Degree::NegInfinity => Value::Null,
        Degree::Finite(d) => json!(d),
    }
}

fn degree_text(p: &QPolynomial) -> String {
    match p.degree() {
        Degree::NegInfinity => "-inf".to_owned(),
        Degree::Finite(d) => d.to_string(),
    }
}

fn coeff_cells(p: &QPolynomial) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_owned()];
    }
    p.to_decimal_strings()
}

fn write_json(out: &mut impl Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

pub fn compute(
    out: &mut impl Write,
    format: Format,
    t: LieType,
    method: Method,
    p: &QPolynomial,
) -> io::Result<()> {
    let at_one = p.eval_one();
    match format {
        Format::Plain => {
            writeln!(out, "{p}")?;
            writeln!(out, "# family: {}", t.family())?;
            writeln!(out, "# rank: {}", t.rank())?;
            writeln!(out, "# method: {method}")?;
            writeln!(out, "# degree: {}", degree_text(p))?;
            writeln!(out, "# value_at_1: {at_one}")
        }
        Format::Json => write_json(
            out,
            &json!({
                "family": t.family().to_string(),
                "rank": t.rank(),
                "method": method,
                "degree": degree_json(p),
                "value_at_1": at_one.to_string(),
                "coefficients": p,
            }),
        ),
        Format::Csv => {
            let cells = coeff_cells(p);
            let header: Vec<String> = (0..cells.len()).map(|k| format!("c{k}")).collect();
            writeln!(
                out,
                "family,rank,method,degree,value_at_1,{}",
                header.join(",")
            )?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                t.family(),
                t.rank(),
                method,
                degree_text(p),
                at_one,
                cells.join(",")
            )
        }
    }
}

/// Groups in descending part count; within a group, enumeration order.
fn groups(parts: &[PartitionMultiset]) -> Vec<(usize, Vec<&PartitionMultiset>)> {
    let max = parts.iter().map(PartitionMultiset::len).max().unwrap_or(0);
    (1..=max)
        .rev()
        .map(|k| (k, parts.iter().filter(|m| m.len() == k).collect::<Vec<_>>()))
        .filter(|(_, g)| !g.is_empty())
        .collect()
}

fn part_strings(m: &PartitionMultiset) -> Vec<String> {
    m.parts().iter().map(ToString::to_string).collect()
}

pub fn enumeration(
    out: &mut impl Write,
    format: Format,
    t: LieType,
    parts: &[PartitionMultiset],
) -> io::Result<()> {
    match format {
        Format::Plain => {
            writeln!(out, "# {t}: {} partitions", parts.len())?;
            for (k, group) in groups(parts) {
                let noun = if k == 1 { "part" } else { "parts" };
                writeln!(out, "{k} {noun} ({})", group.len())?;
                for m in group {
                    writeln!(out, "  {}", part_strings(m).join("  "))?;
                }
            }
            Ok(())
        }
        Format::Json => {
            let gs: Vec<Value> = groups(parts)
                .into_iter()
                .map(|(k, g)| {
                    json!({
                        "parts": k,
                        "partitions": g.into_iter().map(part_strings).collect::<Vec<_>>(),
                    })
                })
                .collect();
            write_json(
                out,
                &json!({
                    "family": t.family().to_string(),
                    "rank": t.rank(),
                    "count": parts.len(),
                    "groups": gs,
                }),
            )
        }
        Format::Csv => {
            writeln!(out, "parts,partition")?;
            for (k, group) in groups(parts) {
                for m in group {
                    writeln!(out, "{k},{}", part_strings(m).join(" "))?;
                }
            }
            Ok(())
        }
    }
}

pub fn series(
    out: &mut impl Write,
    format: Format,
    family: Family,
    q1: bool,
    terms: &[QPolynomial],
) -> io::Result<()> {
    match format {
        Format::Plain => {
            for t in terms {
                if q1 {
                    writeln!(out, "{}", t.eval_one())?;
                } else {
                    writeln!(out, "{t}")?;
                }
            }
            Ok(())
        }
        Format::Json => {
            let values: Vec<Value> = terms
                .iter()
                .map(|t| {
                    if q1 {
                        json!(t.eval_one().to_string())
                    } else {
                        json!(t)
                    }
                })
                .collect();
            write_json(
                out,
                &json!({ "family": family.to_string(), "q1": q1, "terms": values }),
            )
        }
        Format::Csv => {
            if q1 {
                writeln!(out, "index,value")?;
                for (i, t) in terms.iter().enumerate() {
                    writeln!(out, "{},{}", i + 1, t.eval_one())?;
                }
            } else {
                let width = terms
                    .iter()
                    .map(|t| coeff_cells(t).len())
                    .max()
                    .unwrap_or(1);
                let header: Vec<String> = (0..width).map(|k| format!("c{k}")).collect();
                writeln!(out, "index,{}", header.join(","))?;
                for (i, t) in terms.iter().enumerate() {
                    let mut cells = coeff_cells(t);
                    cells.resize(width, "0".to_owned());
                    writeln!(out, "{},{}", i + 1, cells.join(","))?;
                }
            }
            Ok(())
        }
    }
}

pub fn reports(
    out: &mut impl Write,
    format: Format,
    reports: &[VerificationReport],
) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, reports)?;
            writeln!(out)
        }
        Format::Plain => {
            for r in reports {
                let [lo, hi] = r.rank_range;
                match (&r.status, &r.discrepancy) {
                    (Status::Fail, Some(d)) => writeln!(
                        out,
                        "{} ranks {lo}..{hi}: FAIL at rank {}: {} gives {}, {} gives {}",
                        r.family, d.rank, d.methods[0], d.left, d.methods[1], d.right
                    )?,
                    _ => writeln!(
                        out,
                        "{} ranks {lo}..{hi}: pass ({} skipped)",
                        r.family,
                        r.skips.len()
                    )?,
                }
            }
            Ok(())
        }
        Format::Csv => {
            writeln!(
                out,
                "family,min_rank,max_rank,status,discrepancy_rank,skips"
            )?;
            for r in reports {
                let status = if r.passed() { "pass" } else { "fail" };
                let rank = r
                    .discrepancy
                    .as_ref()
                    .map(|d| d.rank.to_string())
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{status},{rank},{}",
                    r.family,
                    r.rank_range[0],
                    r.rank_range[1],
                    r.skips.len()
                )?;
            }
            Ok(())
        }
    }
}
