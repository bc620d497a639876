//! Membership, counting and listing of solutions of `P(x) ≡ 0 (mod p^e)`
//! read off the trunk, plus CRT recombination for composite moduli and a
//! brute-force oracle.
//!
//! A trunk vertex `(r, k)` with thickness `t` and tree-top value `phi` owns
//! exactly the solutions at levels `phi - t < e <= phi` lying in the ball
//! `x ≡ r (mod p^k)`; distinct vertices own disjoint balls.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, PrimePower};
use crate::trunk::{self, BranchStatus, Cursor, Trunk};

/// The residue class `x ≡ r (mod p^k)`, i.e. the closed ball `B(r, p^-k)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolutionBall {
    pub r: BigInt,
    pub k: u32,
}

impl SolutionBall {
    pub fn contains(&self, x: &BigInt, p: u64) -> bool {
        let pk = arith::big_pow(p, self.k);
        x.mod_floor(&pk) == self.r
    }

    /// Number of residues of the ball in `[0, p^e)`.
    pub fn size_at(&self, p: u64, e: u32) -> BigUint {
        arith::big_pow_u(p, e - self.k)
    }

    /// The residues of the ball in `[0, p^e)`, increasing.
    pub fn residues(&self, p: u64, e: u32) -> impl Iterator<Item = BigInt> + '_ {
        let step = arith::big_pow(p, self.k);
        let n = self
            .size_at(p, e)
            .to_u64()
            .expect("ball size checked against budget");
        (0..n).map(move |i| &self.r + &step * i)
    }
}

impl fmt::Display for SolutionBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, p^-{})", self.r, self.k)
    }
}

/// The solutions modulo `p^e` as disjoint balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub p: u64,
    pub e: u32,
    pub balls: Vec<SolutionBall>,
    pub count: BigUint,
}

impl SolutionSet {
    pub fn modulus(&self) -> BigUint {
        arith::big_pow_u(self.p, self.e)
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        self.balls.iter().any(|b| b.contains(x, self.p))
    }

    /// Explicit sorted residues in `[0, p^e)`, refusing more than `budget`.
    pub fn enumerate(&self, budget: u64) -> Result<Vec<BigInt>> {
        if self.count > BigUint::from(budget) {
            return Err(Error::EnumerationTooLarge {
                size: self.count.to_string(),
                budget,
            });
        }
        let mut out: Vec<BigInt> = self
            .balls
            .iter()
            .flat_map(|b| b.residues(self.p, self.e))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Vertices (virtual ones included) owning level `e` of `P0`, as balls.
fn normalized_balls(trunk: &Trunk, e: u32, requested: u32) -> Result<Vec<SolutionBall>> {
    let mut balls = Vec::new();
    let mut stack = trunk.root_cursors();
    while let Some(c) = stack.pop() {
        let node = trunk.node(c.template);
        let t = node.thickness();
        if c.phi - t < e && e <= c.phi {
            balls.push(SolutionBall {
                r: c.r.clone(),
                k: c.k,
            });
        }
        if c.phi >= e {
            continue;
        }
        match node.status {
            BranchStatus::Leaf => {}
            BranchStatus::Expanded | BranchStatus::CycleCertified { .. } => {
                stack.extend(trunk.virtual_children(&c));
            }
            BranchStatus::HenselCertified => {
                // the continuation vertex at level k + j has phi + j = e
                let j = e - c.phi;
                balls.push(hensel_ball(trunk, &c, j));
            }
            BranchStatus::Undetermined => {
                return Err(Error::InsufficientDepth {
                    level: c.k,
                    needed: requested,
                })
            }
        }
    }
    balls.sort();
    Ok(balls)
}

fn hensel_ball(trunk: &Trunk, c: &Cursor, j: u32) -> SolutionBall {
    let node = trunk.node(c.template);
    let rho = BigInt::from(trunk.hensel_root(c.template));
    let y = trunk::hensel_lift(&node.successor, &rho, trunk.p(), j)
        .expect("hensel-certified successor has a simple root");
    SolutionBall {
        r: &c.r + trunk.p_pow(c.k) * y,
        k: c.k + j,
    }
}

/// Solutions modulo `p^e` as at most `d_Trunk` disjoint balls, with their count.
pub fn ball_decomposition(trunk: &Trunk, e: u32) -> Result<SolutionSet> {
    let p = trunk.p();
    let content = trunk.content();
    let balls = if e <= content {
        // p^e divides every value of P
        vec![SolutionBall {
            r: BigInt::zero(),
            k: 0,
        }]
    } else {
        normalized_balls(trunk, e - content, e)?
    };
    let count = balls.iter().map(|b| b.size_at(p, e)).sum();
    Ok(SolutionSet { p, e, balls, count })
}

/// `N_e`, the number of solutions in `Z/p^eZ`. `N_0 = 1`.
pub fn count_solutions(trunk: &Trunk, e: u32) -> Result<BigUint> {
    Ok(ball_decomposition(trunk, e)?.count)
}

/// Whether `P(x) ≡ 0 (mod p^e)`: walk down the vertices `x` passes through
/// and succeed as soon as one has `phi >= e`.
pub fn is_solution(trunk: &Trunk, x: &BigInt, e: u32) -> Result<bool> {
    let content = trunk.content();
    if e <= content {
        return Ok(true);
    }
    let target = e - content;
    let p = trunk.p();
    let mut frontier = trunk.root_cursors();
    loop {
        let Some(c) = frontier
            .into_iter()
            .find(|c| x.mod_floor(&trunk.p_pow(c.k)) == c.r)
        else {
            return Ok(false);
        };
        if c.phi >= target {
            return Ok(true);
        }
        match trunk.node(c.template).status {
            BranchStatus::Leaf => return Ok(false),
            BranchStatus::Expanded | BranchStatus::CycleCertified { .. } => {
                frontier = trunk.virtual_children(&c);
            }
            BranchStatus::HenselCertified => {
                let ball = hensel_ball(trunk, &c, target - c.phi);
                return Ok(ball.contains(x, p));
            }
            BranchStatus::Undetermined => {
                return Err(Error::InsufficientDepth {
                    level: c.k,
                    needed: e,
                })
            }
        }
    }
}

pub fn enumerate_solutions(trunk: &Trunk, e: u32) -> Result<Vec<BigInt>> {
    enumerate_solutions_with(trunk, e, &Limits::default())
}

/// Sorted solutions in `[0, p^e)`. The budget bounds the number of solutions
/// listed.
pub fn enumerate_solutions_with(trunk: &Trunk, e: u32, limits: &Limits) -> Result<Vec<BigInt>> {
    ball_decomposition(trunk, e)?.enumerate(limits.enumeration_budget)
}

pub fn brute_force(poly: &Polynomial, m: &BigInt) -> Result<Vec<BigInt>> {
    brute_force_with(poly, m, &Limits::default())
}

/// Every `x` in `[0, m)` with `P(x) ≡ 0 (mod m)`, by direct evaluation.
pub fn brute_force_with(poly: &Polynomial, m: &BigInt, limits: &Limits) -> Result<Vec<BigInt>> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "modulus must be positive, got {m}"
        )));
    }
    if *m > BigInt::from(limits.enumeration_budget) {
        return Err(Error::EnumerationTooLarge {
            size: m.to_string(),
            budget: limits.enumeration_budget,
        });
    }
    let m64 = m.to_u64().expect("modulus below the budget");
    let coeffs = poly.residues_u64(m64);
    let modulus = m64 as u128;
    Ok((0..m64)
        .filter(|&x| {
            let x = x as u128;
            coeffs
                .iter()
                .rev()
                .fold(0u128, |acc, &c| (acc * x + c as u128) % modulus)
                == 0
        })
        .map(BigInt::from)
        .collect())
}

/// Per-prime-power part of a composite solve.
#[derive(Clone, Debug)]
pub struct CrtComponent {
    pub prime_power: PrimePower,
    pub solutions: SolutionSet,
}

#[derive(Clone, Debug)]
pub struct CrtSolution {
    pub modulus: BigUint,
    pub components: Vec<CrtComponent>,
    /// Product of the component counts.
    pub count: BigUint,
    /// Sorted solutions in `[0, n)`.
    pub solutions: Vec<BigInt>,
}

/// Factor `n` and solve each prime power through its trunk. No enumeration.
pub fn crt_decompose(poly: &Polynomial, n: &BigUint, limits: &Limits) -> Result<Vec<CrtComponent>> {
    if *n < BigUint::from(2u32) {
        return Err(Error::InvalidArgument(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    arith::factorize(n)?
        .into_iter()
        .map(|(p, e)| {
            let p64 = p
                .to_u64()
                .filter(|&q| q <= limits.max_prime)
                .ok_or_else(|| Error::PrimeTooLarge {
                    p: p.to_string(),
                    limit: limits.max_prime,
                })?;
            let trunk = trunk::build_trunk_with(poly, p64, trunk::level_for_exponent(e), limits)?;
            Ok(CrtComponent {
                prime_power: PrimePower::new(p, e)?,
                solutions: ball_decomposition(&trunk, e)?,
            })
        })
        .collect()
}

/// Number of solutions modulo `n`: the product over its prime powers.
pub fn crt_count(poly: &Polynomial, n: &BigUint, limits: &Limits) -> Result<BigUint> {
    Ok(crt_decompose(poly, n, limits)?
        .iter()
        .map(|c| c.solutions.count.clone())
        .product())
}

pub fn crt_solve(poly: &Polynomial, n: &BigUint) -> Result<CrtSolution> {
    crt_solve_with(poly, n, &Limits::default())
}

/// All solutions modulo `n`, recombined from the prime-power solutions.
pub fn crt_solve_with(poly: &Polynomial, n: &BigUint, limits: &Limits) -> Result<CrtSolution> {
    let components = crt_decompose(poly, n, limits)?;
    let count: BigUint = components
        .iter()
        .map(|c| c.solutions.count.clone())
        .product();
    if count > BigUint::from(limits.enumeration_budget) {
        return Err(Error::EnumerationTooLarge {
            size: count.to_string(),
            budget: limits.enumeration_budget,
        });
    }
    let mut solutions = vec![BigInt::zero()];
    let mut modulus = BigInt::one();
    if !count.is_zero() {
        for c in &components {
            let m = BigInt::from(c.solutions.modulus());
            let local = c.solutions.enumerate(limits.enumeration_budget)?;
            let inv = arith::mod_inverse(&modulus, &m).expect("prime powers are coprime");
            solutions = solutions
                .iter()
                .flat_map(|a| {
                    local
                        .iter()
                        .map(|b| arith::crt_pair(a, &modulus, b, &m, &inv))
                        .collect::<Vec<_>>()
                })
                .collect();
            modulus *= m;
        }
        solutions.sort();
    } else {
        solutions.clear();
    }
    Ok(CrtSolution {
        modulus: n.clone(),
        components,
        count,
        solutions,
    })
}
