//! Trunk counting against brute-force enumeration.

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::parser::{parse, print};
use crate::poly::Polynomial;
use crate::report::{BenchRow, BenchmarkPayload};
use crate::solver::{brute_force_with, count_solutions};
use crate::trunk::{build_trunk_with, level_for_exponent};

/// Largest modulus the brute-force column scans.
pub const BRUTE_FORCE_CAP: u64 = 5_000_000;

const REPEATS: usize = 3;

pub const SUITES: &[&str] = &["default", "square"];

/// `(polynomial, p)` pairs of a named suite.
pub fn suite(name: &str) -> Result<Vec<(Polynomial, u64)>> {
    let items: &[(&str, u64)] = match name {
        "default" => &[
            ("(X^2+3)*(X^2+3X+9)", 3),
            ("X*(X-1)^2+25", 5),
            ("X^2", 3),
            ("(X-1)^2+3^5", 3),
            ("(X-1)*(X-2)+5", 5),
            ("X^3-X", 7),
        ],
        "square" => &[("X^2", 3)],
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite '{other}', expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(items
        .iter()
        .map(|&(s, p)| (parse(s).expect("suite polynomial"), p))
        .collect())
}

fn fastest<T>(mut f: impl FnMut() -> Result<T>) -> Result<(T, Duration)> {
    let mut best = None;
    let mut out = None;
    for _ in 0..REPEATS {
        let start = Instant::now();
        let value = f()?;
        let elapsed = start.elapsed();
        if best.is_none_or(|b| elapsed < b) {
            best = Some(elapsed);
        }
        out = Some(value);
    }
    Ok((
        out.expect("at least one run"),
        best.expect("at least one run"),
    ))
}

fn micros(d: Duration) -> f64 {
    d.as_secs_f64() * 1e6
}

/// One row per polynomial of the suite and exponent `1..=max_exp`.
pub fn run(suite_name: &str, max_exp: u32, limits: &Limits) -> Result<BenchmarkPayload> {
    let mut rows = Vec::new();
    for (poly, p) in suite(suite_name)? {
        for e in 1..=max_exp {
            let ((count, vertices), trunk_time) = fastest(|| {
                let trunk = build_trunk_with(&poly, p, level_for_exponent(e), limits)?;
                Ok((count_solutions(&trunk, e)?, trunk.vertex_count()))
            })?;
            let modulus = crate::arith::big_pow(p, e);
            let brute = if modulus <= BigInt::from(BRUTE_FORCE_CAP) {
                let brute_limits = limits.with_enumeration_budget(BRUTE_FORCE_CAP);
                let (xs, t) = fastest(|| brute_force_with(&poly, &modulus, &brute_limits))?;
                debug_assert_eq!(count, xs.len().into());
                Some(t)
            } else {
                None
            };
            rows.push(BenchRow {
                poly: print(&poly),
                p: p.to_string(),
                e,
                count: count.to_string(),
                trunk_vertices: vertices,
                trunk_micros: micros(trunk_time),
                brute_micros: brute.map(micros),
                brute_scanned: brute.map(|_| modulus.to_string()),
            });
        }
    }
    Ok(BenchmarkPayload { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table() {
        assert!(run("default", 0, &Limits::default())
            .unwrap()
            .rows
            .is_empty());
    }

    #[test]
    fn square_counts() {
        let rows = run("square", 6, &Limits::default()).unwrap().rows;
        let counts: Vec<_> = rows.iter().map(|r| r.count.as_str()).collect();
        assert_eq!(counts, ["1", "3", "3", "9", "9", "27"]);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(suite("nope"), Err(Error::InvalidArgument(_))));
    }
}
