//! Consolidated report: published tables, scaling formulas, test vectors and
//! a verification grid.

use std::fmt::Write as _;

use qlzoc::analyzer::{compare, render_table, ComparisonRow, Metric, Source};
use qlzoc::decompose::DecompositionPolicy;
use qlzoc::generators::DesignId;
use qlzoc::sim::{exhaustive_verify, sampled_verify, Execution, Method, VerificationReport};
use qlzoc::vectors::{run_vector, PaperVector, LOC_FAMILIES, LOC_VECTORS, LZC_FAMILIES, LZC_VECTORS};
use qlzoc::Result;

use crate::Failure;

/// Largest width verified exhaustively; wider cells are sampled.
const EXHAUSTIVE_LIMIT: usize = 16;

const TABLE_I: [DesignId; 3] = [DesignId::POp4Qlzc, DesignId::TaPOp4Qlzc, DesignId::TaOpQlzc];
const TABLE_II: [DesignId; 3] = [DesignId::TaOpQlzc, DesignId::TaOpPqlzc, DesignId::FoTaOpPqlzc];

fn rows_for(design: DesignId, m: usize, keep: impl Fn(&ComparisonRow) -> bool) -> Result<Vec<ComparisonRow>> {
    let (_, rows) = compare(design, m, &DecompositionPolicy::default())?;
    Ok(rows.into_iter().filter(keep).collect())
}

fn table_section(out: &mut String, title: &str, designs: &[DesignId], m: usize, source: Source) -> Result<()> {
    writeln!(out, "## {title}\n").unwrap();
    let mut rows = Vec::new();
    for &d in designs {
        rows.extend(rows_for(d, m, |r| r.source == source)?);
    }
    out.push_str(&render_table(&rows));
    out.push('\n');
    Ok(())
}

fn scaling_section(out: &mut String, widths: &[usize]) -> Result<bool> {
    writeln!(out, "## Table III: closed-form scaling\n").unwrap();
    let mut rows = Vec::new();
    let mut ok = true;
    let mut checks = String::new();
    for &m in widths {
        for d in TABLE_II {
            if d.validate_width(m).is_err() {
                continue;
            }
            let r = rows_for(d, m, |r| r.source == Source::TableIII)?;
            if d == DesignId::TaOpQlzc && m >= 2 {
                let tc = r.iter().find(|r| r.metric == Metric::TCount).map_or(-1, |r| r.generated);
                let pass = tc == 4 * m as i64 - 4;
                ok &= pass;
                writeln!(
                    checks,
                    "check design={d} m={m} t_count={tc} expected={} status={}",
                    4 * m - 4,
                    if pass { "pass" } else { "fail" }
                )
                .unwrap();
            }
            rows.extend(r);
        }
    }
    out.push_str(&render_table(&rows));
    out.push('\n');
    out.push_str(&checks);
    out.push('\n');
    Ok(ok)
}

fn vector_section(
    out: &mut String,
    title: &str,
    vectors: &[PaperVector],
    families: &[DesignId],
    mode: bool,
) -> Result<bool> {
    writeln!(out, "## {title}\n").unwrap();
    let mut header = format!("{:<4}  {:<34}  {:<8}", "n", "x", "expected");
    for d in families {
        write!(header, "  {:<16}", d.name()).unwrap();
    }
    writeln!(out, "{}  status", header.trim_end()).unwrap();
    let mut ok = true;
    for v in vectors {
        let mut line = format!("{:<4}  {:<34}  {:<8}", v.n, format!("{:#b}", v.x), v.count);
        let mut row_ok = true;
        for &d in families {
            let (run, circuit) = run_vector(d, v.n, v.x, Some(mode))?;
            row_ok &= run.reported == v.count && run.clean(&circuit);
            write!(line, "  {:<16}", run.reported).unwrap();
        }
        ok &= row_ok;
        writeln!(line, "  {}", if row_ok { "pass" } else { "fail" }).unwrap();
        out.push_str(&line);
    }
    out.push('\n');
    Ok(ok)
}

fn verify_cell(design: DesignId, m: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    if m <= EXHAUSTIVE_LIMIT {
        exhaustive_verify(design, m, Execution::Parallel)
    } else {
        sampled_verify(design, m, samples, seed, Execution::Parallel)
    }
}

fn verification_section(out: &mut String, widths: &[usize], samples: usize, seed: u64) -> Result<bool> {
    writeln!(out, "## Verification\n").unwrap();
    let cells: Vec<(DesignId, usize)> = DesignId::ALL
        .iter()
        .flat_map(|&d| widths.iter().map(move |&m| (d, m)))
        .filter(|&(d, m)| d.validate_width(m).is_ok())
        .collect();
    #[cfg(feature = "parallel")]
    let reports: Vec<Result<VerificationReport>> = {
        use rayon::prelude::*;
        cells.par_iter().map(|&(d, m)| verify_cell(d, m, samples, seed)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let reports: Vec<Result<VerificationReport>> =
        cells.iter().map(|&(d, m)| verify_cell(d, m, samples, seed)).collect();
    writeln!(out, "{:<22}  {:<3}  {:<10}  {:<8}  {:<8}  status", "design", "m", "method", "cases", "failures").unwrap();
    let mut ok = true;
    for r in reports {
        let r = r?;
        ok &= r.passed();
        let method = match r.method {
            Method::Exhaustive => "exhaustive",
            Method::Sampled { .. } => "sampled",
        };
        writeln!(
            out,
            "{:<22}  {:<3}  {:<10}  {:<8}  {:<8}  {}",
            r.design.name(),
            r.m,
            method,
            r.cases,
            r.failures,
            if r.passed() { "pass" } else { "fail" }
        )
        .unwrap();
    }
    out.push('\n');
    Ok(ok)
}

/// Builds the whole report. The flag is false when any check failed.
pub fn sweep(widths: &[usize], samples: usize, seed: u64) -> std::result::Result<(String, bool), Failure> {
    let mut out = String::from("# qlzoc sweep\n\n");
    writeln!(out, "widths={}", widths.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")).unwrap();
    writeln!(out, "samples={samples}\nseed={seed}\n").unwrap();
    table_section(&mut out, "Table I: 4-input designs", &TABLE_I, 4, Source::TableI)?;
    table_section(&mut out, "Table II: 8-input designs", &TABLE_II, 8, Source::TableII)?;
    let mut ok = scaling_section(&mut out, widths)?;
    ok &= vector_section(&mut out, "Table IV: leading-zero vectors", &LZC_VECTORS, &LZC_FAMILIES, true)?;
    ok &= vector_section(&mut out, "Table V: leading-one vectors", &LOC_VECTORS, &LOC_FAMILIES, false)?;
    ok &= verification_section(&mut out, widths, samples, seed)?;
    writeln!(out, "status={}", if ok { "pass" } else { "fail" }).unwrap();
    Ok((out, ok))
}
