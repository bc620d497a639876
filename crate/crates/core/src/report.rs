//! Structured, text and DOT renderings of command results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::analysis::{QuadraticClass, RationalSeries};
use crate::config::Limits;
use crate::error::Result;
use crate::parser::print;
use crate::solver::{self, CrtComponent, SolutionSet};
use crate::trunk::Trunk;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Debug, Serialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: CommandEcho,
    pub payload: Payload,
}

/// The inputs of the command, as given.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CommandEcho {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Trunk(TrunkPayload),
    Solutions(SolutionsPayload),
    Count(CountPayload),
    Classification(ClassificationPayload),
    Series(SeriesPayload),
    Benchmark(BenchmarkPayload),
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeDoc {
    pub id: usize,
    pub parent: Option<usize>,
    pub r: String,
    pub k: u32,
    pub t: Option<u32>,
    pub phi: u32,
    pub s: u32,
    pub status: String,
    pub successor: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrunkPayload {
    pub p: String,
    pub content: u32,
    pub normalized: String,
    pub reduced_degree: u32,
    pub built_depth: u32,
    pub complete: bool,
    pub nodes: Vec<NodeDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BallDoc {
    pub r: String,
    pub k: u32,
    pub size: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentDoc {
    pub prime_power: String,
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balls: Option<Vec<BallDoc>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionsPayload {
    pub modulus: String,
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balls: Option<Vec<BallDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentDoc>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountPayload {
    pub modulus: String,
    pub count: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationPayload {
    pub kind: String,
    pub base_length: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorDoc {
    pub u_exponent: u32,
    pub p_exponent: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesPayload {
    pub p: String,
    pub certified: bool,
    pub display: String,
    /// Ascending coefficients in `u`.
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub factors: Vec<FactorDoc>,
    /// `N_e / p^e` for `e = 0, 1, ...`.
    pub coefficients: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_through: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub poly: String,
    pub p: String,
    pub e: u32,
    pub count: String,
    pub trunk_vertices: usize,
    pub trunk_micros: f64,
    /// `None` when `p^e` exceeds the brute-force cap.
    pub brute_micros: Option<f64>,
    pub brute_scanned: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchmarkPayload {
    pub rows: Vec<BenchRow>,
}

impl OutputDocument {
    pub fn new(command: CommandEcho, payload: Payload) -> Self {
        OutputDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable document");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        match &self.payload {
            Payload::Trunk(t) => trunk_text(t),
            Payload::Solutions(s) => solutions_text(s),
            Payload::Count(c) => format!("N = {} (mod {})\n", c.count, c.modulus),
            Payload::Classification(c) => {
                format!("{} (base length {})\n", c.kind, c.base_length)
            }
            Payload::Series(s) => series_text(s),
            Payload::Benchmark(b) => bench_text(b),
        }
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn trunk_payload(trunk: &Trunk) -> TrunkPayload {
    let nodes = trunk
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, n)| NodeDoc {
            id,
            parent: n.parent,
            r: n.r.to_string(),
            k: n.k,
            t: n.t,
            phi: n.phi,
            s: n.residual_degree,
            status: n.status.to_string(),
            successor: print(&n.successor),
        })
        .collect();
    TrunkPayload {
        p: trunk.p().to_string(),
        content: trunk.content(),
        normalized: print(trunk.normalized()),
        reduced_degree: trunk.reduced_degree(),
        built_depth: trunk.built_depth(),
        complete: trunk.is_complete(),
        nodes,
    }
}

pub fn ball_docs(set: &SolutionSet) -> Vec<BallDoc> {
    set.balls
        .iter()
        .map(|b| BallDoc {
            r: b.r.to_string(),
            k: b.k,
            size: b.size_at(set.p, set.e).to_string(),
        })
        .collect()
}

/// Prime-power solutions; `solutions` is the explicit listing when requested.
pub fn prime_power_payload(
    set: &SolutionSet,
    solutions: Option<&[BigInt]>,
    balls: bool,
) -> SolutionsPayload {
    SolutionsPayload {
        modulus: set.modulus().to_string(),
        count: set.count.to_string(),
        solutions: solutions.map(strings),
        balls: balls.then(|| ball_docs(set)),
        components: None,
    }
}

/// Composite-modulus solutions; `solutions` is the explicit listing when
/// requested.
pub fn composite_payload(
    modulus: &BigUint,
    components: &[CrtComponent],
    solutions: Option<&[BigInt]>,
    balls: bool,
) -> SolutionsPayload {
    let count: BigUint = components
        .iter()
        .map(|c| c.solutions.count.clone())
        .product();
    let components = components
        .iter()
        .map(|c| ComponentDoc {
            prime_power: c.prime_power.to_string(),
            count: c.solutions.count.to_string(),
            balls: balls.then(|| ball_docs(&c.solutions)),
        })
        .collect();
    SolutionsPayload {
        modulus: modulus.to_string(),
        count: count.to_string(),
        solutions: solutions.map(strings),
        balls: None,
        components: Some(components),
    }
}

pub fn classification_payload(class: &QuadraticClass) -> ClassificationPayload {
    ClassificationPayload {
        kind: class.kind.to_string(),
        base_length: class.base_length.to_string(),
    }
}

/// The series with its first `order` coefficients (fewer when uncertified).
pub fn series_payload(series: &RationalSeries, order: usize) -> SeriesPayload {
    let coefficients: Vec<BigRational> = match &series.truncation {
        Some(t) => t.iter().take(order).cloned().collect(),
        None => series.expand(order),
    };
    SeriesPayload {
        p: series.p.to_string(),
        certified: series.certified,
        display: series.to_string(),
        numerator: strings(series.numerator.coeffs()),
        denominator: strings(series.denominator.coeffs()),
        factors: series
            .factors
            .iter()
            .map(|f| FactorDoc {
                u_exponent: f.u_exponent,
                p_exponent: f.p_exponent,
            })
            .collect(),
        coefficients: strings(&coefficients),
        known_through: series.horizon(),
    }
}

fn trunk_text(t: &TrunkPayload) -> String {
    let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for n in &t.nodes {
        if let Some(parent) = n.parent {
            children.entry(parent).or_default().push(n.id);
        }
    }
    let mut out = format!(
        "P0 = {}  content = {}  p = {}  d_p = {}\n",
        t.normalized, t.content, t.p, t.reduced_degree
    );
    let mut stack = vec![(0usize, 0usize)];
    while let Some((id, depth)) = stack.pop() {
        let n = &t.nodes[id];
        let indent = "  ".repeat(depth);
        match n.t {
            None => writeln!(out, "{indent}(0,0) root s={} {}", n.s, n.status),
            Some(th) => writeln!(
                out,
                "{indent}({},{}) t={} phi={} s={} {}",
                n.r, n.k, th, n.phi, n.s, n.status
            ),
        }
        .expect("write to string");
        if let Some(cs) = children.get(&id) {
            stack.extend(cs.iter().rev().map(|&c| (c, depth + 1)));
        }
    }
    out
}

fn solutions_text(s: &SolutionsPayload) -> String {
    let mut out = format!("N = {} (mod {})\n", s.count, s.modulus);
    if let Some(components) = &s.components {
        for c in components {
            writeln!(out, "  mod {}: {} solutions", c.prime_power, c.count).expect("write");
            for b in c.balls.iter().flatten() {
                writeln!(out, "    x = {} (mod p^{})", b.r, b.k).expect("write");
            }
        }
    }
    if let Some(balls) = &s.balls {
        for b in balls {
            writeln!(out, "x = {} (mod p^{})  [{} residues]", b.r, b.k, b.size).expect("write");
        }
    }
    if let Some(xs) = &s.solutions {
        writeln!(out, "[{}]", xs.join(", ")).expect("write");
    }
    out
}

fn series_text(s: &SeriesPayload) -> String {
    let mut out = format!("S(u) = {}\n", s.display);
    writeln!(out, "certified: {}", s.certified).expect("write");
    writeln!(out, "N_e/p^e: {}", s.coefficients.join(", ")).expect("write");
    out
}

fn bench_text(b: &BenchmarkPayload) -> String {
    let mut out = format!(
        "{:<28} {:>4} {:>3} {:>14} {:>8} {:>12} {:>14}\n",
        "poly", "p", "e", "N_e", "vertices", "trunk_us", "brute_us"
    );
    for r in &b.rows {
        let brute = r
            .brute_micros
            .map_or("skipped".to_string(), |m| format!("{m:.1}"));
        writeln!(
            out,
            "{:<28} {:>4} {:>3} {:>14} {:>8} {:>12.1} {:>14}",
            r.poly, r.p, r.e, r.count, r.trunk_vertices, r.trunk_micros, brute
        )
        .expect("write");
    }
    out
}

/// DOT rendering of the trunk. With `fans = Some(e)` the whole solution tree
/// up to level `e` is drawn, trunk vertices in bold.
pub fn trunk_dot(trunk: &Trunk, fans: Option<u32>, limits: &Limits) -> Result<String> {
    let mut out = String::from("digraph trunk {\n  node [shape=box, fontname=\"monospace\"];\n");
    match fans {
        None => {
            for (id, n) in trunk.nodes().iter().enumerate() {
                let label = match n.t {
                    None => "(0,0)".to_string(),
                    Some(t) => format!("({},{}) t={}", n.r, n.k, t),
                };
                writeln!(out, "  n{id} [label=\"{label}\"];").expect("write");
            }
            for (id, n) in trunk.nodes().iter().enumerate() {
                for c in &n.children {
                    writeln!(out, "  n{id} -> n{c};").expect("write");
                }
            }
        }
        Some(e) => {
            let p = BigInt::from(trunk.p());
            let trunk_t: BTreeMap<(u32, BigInt), u32> = trunk
                .nodes()
                .iter()
                .filter_map(|n| n.t.map(|t| ((n.k, n.r.clone()), t)))
                .collect();
            let mut budget = limits.enumeration_budget;
            writeln!(out, "  \"0_0\" [label=\"(0,0)\", style=bold];").expect("write");
            let mut pk = BigInt::from(1);
            for k in 1..=e {
                let level = solver::enumerate_solutions_with(
                    trunk,
                    k,
                    &limits.with_enumeration_budget(budget),
                )?;
                budget = budget.saturating_sub(level.len() as u64);
                for x in &level {
                    let label = match trunk_t.get(&(k, x.clone())) {
                        Some(t) => format!("label=\"({x},{k}) t={t}\", style=bold"),
                        None => format!("label=\"({x},{k})\""),
                    };
                    writeln!(out, "  \"{k}_{x}\" [{label}];").expect("write");
                    writeln!(out, "  \"{}_{}\" -> \"{k}_{x}\";", k - 1, x % &pk).expect("write");
                }
                pk *= &p;
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
