//! Oracles and checks shared by the integration tests. Nothing here reuses
//! the library's own valuation, thickness or counting code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use padic_trunk::solver::{ball_decomposition, enumerate_solutions};
use padic_trunk::trunk::{tree_top_identity_holds, BranchStatus, Trunk};
use padic_trunk::Polynomial;

pub fn poly(c: &[i64]) -> Polynomial {
    Polynomial::from_coeffs(c)
}

/// Valuation by repeated division; `None` for zero.
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    Some(v)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `P^(i)(r) / i!` from the binomial expansion of `sum a_j X^j`.
pub fn taylor_coefficient(p: &Polynomial, r: &BigInt, i: usize) -> BigInt {
    p.coeffs()
        .iter()
        .enumerate()
        .skip(i)
        .map(|(j, a)| binomial(j, i) * a * num_traits::pow(r.clone(), j - i))
        .sum()
}

/// Thickness as `min_i val_p(P^(i)(r)/i! * p^i)`.
pub fn taylor_thickness(p: &Polynomial, r: &BigInt, prime: u64) -> u32 {
    let d = p.degree().expect("nonzero polynomial");
    (0..=d)
        .filter_map(|i| {
            let c = taylor_coefficient(p, r, i) * num_traits::pow(BigInt::from(prime), i);
            valuation(&c, prime)
        })
        .min()
        .expect("some Taylor coefficient is nonzero")
}

/// Naive evaluation of `P(x) mod m` with i128 arithmetic.
pub fn eval_mod(p: &Polynomial, x: i128, m: i128) -> i128 {
    let mut acc = 0i128;
    for c in p.coeffs().iter().rev() {
        let c = c.mod_floor(&BigInt::from(m)).to_i128().unwrap();
        acc = (acc * x + c).rem_euclid(m);
    }
    acc
}

/// Every `x` in `[0, m)` with `P(x) = 0 mod m`.
pub fn naive_solutions(p: &Polynomial, m: i128) -> Vec<BigInt> {
    (0..m)
        .filter(|&x| eval_mod(p, x, m) == 0)
        .map(BigInt::from)
        .collect()
}

/// Multiplicity of `rho` as a root of `P mod p`, by repeated synthetic division.
pub fn multiplicity_mod_p(p: &Polynomial, rho: u64, prime: u64) -> u32 {
    let m = prime as i128;
    let mut c: Vec<i128> = p
        .coeffs()
        .iter()
        .map(|a| a.mod_floor(&BigInt::from(prime)).to_i128().unwrap())
        .collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    let mut mult = 0;
    loop {
        if c.is_empty() {
            return u32::MAX;
        }
        // divide by (X - rho), highest degree first
        let mut q = vec![0i128; c.len().saturating_sub(1)];
        let mut carry = 0i128;
        for i in (0..c.len()).rev() {
            let v = (c[i] + carry * rho as i128).rem_euclid(m);
            if i == 0 {
                if v != 0 {
                    return mult;
                }
            } else {
                q[i - 1] = v;
            }
            carry = v;
        }
        mult += 1;
        c = q;
        while c.last() == Some(&0) {
            c.pop();
        }
    }
}

/// Degree of `P mod p`.
pub fn degree_mod_p(p: &Polynomial, prime: u64) -> Option<usize> {
    let m = BigInt::from(prime);
    p.coeffs().iter().rposition(|a| !(a % &m).is_zero())
}

/// Structural invariants every built trunk must satisfy. Returns a
/// description of the first violation.
pub fn trunk_violation(trunk: &Trunk) -> Option<String> {
    let p = trunk.p();
    let d = trunk.normalized().degree().unwrap() as u32;
    let d_p = degree_mod_p(trunk.normalized(), p).unwrap() as u32;
    if trunk.reduced_degree() != d_p {
        return Some("root residual degree is not d_p".into());
    }
    for (id, n) in trunk.nodes().iter().enumerate() {
        let pk = num_traits::pow(BigInt::from(p), n.k as usize);
        if n.r.is_negative() || n.r >= pk {
            return Some(format!("node {id}: r out of range"));
        }
        if !tree_top_identity_holds(trunk, n) {
            return Some(format!("node {id}: P0(r + p^k X) != p^phi successor"));
        }
        if degree_mod_p(&n.successor, p).map(|s| s as u32) != Some(n.residual_degree) {
            return Some(format!("node {id}: residual degree mismatch"));
        }
        match (n.parent, n.t) {
            (None, None) if n.phi == 0 && n.k == 0 => {}
            (Some(parent), Some(t)) => {
                let par = trunk.node(parent);
                if t < 1 || t > d {
                    return Some(format!("node {id}: t = {t} outside [1, {d}]"));
                }
                if n.residual_degree > t {
                    return Some(format!("node {id}: s > t"));
                }
                if n.phi != par.phi + t || n.phi < n.k || n.k != par.k + 1 {
                    return Some(format!("node {id}: phi/k bookkeeping"));
                }
                if (&n.r - &par.r).mod_floor(&(&pk / p)) != BigInt::zero() {
                    return Some(format!("node {id}: r not above its parent"));
                }
                if n.status == BranchStatus::HenselCertified && t != 1 {
                    return Some(format!("node {id}: hensel-certified with t = {t}"));
                }
            }
            _ => return Some(format!("node {id}: malformed root/parent data")),
        }
        if !n.children.is_empty() {
            let sum: u32 = n.children.iter().map(|&c| trunk.node(c).thickness()).sum();
            if sum > n.residual_degree {
                return Some(format!("node {id}: node rule, children sum {sum} > s"));
            }
            for &c in &n.children {
                let child = trunk.node(c);
                let mult = multiplicity_mod_p(&n.successor, child.digit, p);
                if child.thickness() > mult {
                    return Some(format!("node {c}: t exceeds root multiplicity {mult}"));
                }
            }
            let digits: Vec<u64> = n.children.iter().map(|&c| trunk.node(c).digit).collect();
            if !digits.windows(2).all(|w| w[0] < w[1]) {
                return Some(format!("node {id}: children not ordered by digit"));
            }
        }
    }
    if trunk.level_widths().iter().any(|&w| w as u32 > d_p.max(1)) {
        return Some("level width exceeds d_p".into());
    }
    if trunk.leaves().count() as u32 > d_p {
        return Some("more leaves than d_p".into());
    }
    None
}

/// Ball decomposition at level `e` is disjoint and matches the enumeration.
pub fn ball_violation(trunk: &Trunk, e: u32) -> Option<String> {
    let set = ball_decomposition(trunk, e).ok()?;
    let p = BigInt::from(trunk.p());
    for (i, a) in set.balls.iter().enumerate() {
        for b in &set.balls[i + 1..] {
            let m = num_traits::pow(p.clone(), a.k.min(b.k) as usize);
            if a.r.mod_floor(&m) == b.r.mod_floor(&m) {
                return Some(format!(
                    "balls ({}, {}) and ({}, {}) overlap",
                    a.r, a.k, b.r, b.k
                ));
            }
        }
    }
    let total: BigInt = set
        .balls
        .iter()
        .map(|b| num_traits::pow(p.clone(), (e - b.k) as usize))
        .sum();
    let listed = enumerate_solutions(trunk, e).ok()?;
    if total != BigInt::from(listed.len()) || BigInt::from(set.count.clone()) != total {
        return Some(format!(
            "ball sizes sum to {total}, enumeration has {}",
            listed.len()
        ));
    }
    None
}

/// Nonzero polynomial of degree at most `max_degree`, coefficients in `[-bound, bound]`.
pub fn arb_poly(max_degree: usize, bound: i64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-bound..=bound, 1..=max_degree + 1)
        .prop_map(|c| Polynomial::from_coeffs(&c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

pub fn arb_small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

/// Polynomials whose trunks contain cycles: `c (aX - b)^m`, plus a few with
/// several repeated factors.
pub fn cycle_family() -> Vec<(Polynomial, u64)> {
    let mut out = Vec::new();
    for &p in &[2u64, 3, 5, 7] {
        out.push((poly(&[0, 0, 1]), p));
        out.push((poly(&[0, 0, 0, 1]), p));
        out.push((poly(&[1, 4, 4]), p));
        out.push((poly(&[-1, 3]).pow(3), p));
        out.push((poly(&[0, 0, 5]), p));
    }
    out
}
