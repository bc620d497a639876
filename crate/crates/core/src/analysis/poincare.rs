//! The Poincaré series `S(u) = sum_{e >= 0} N_e u^e / p^e`.
//!
//! Every trunk vertex `(r, k)` with thickness `t` and tree-top value `phi`
//! contributes `p^(e-k)` solutions at the levels `phi - t < e <= phi`, which
//! is `p^-k (u^(phi-t+1) + ... + u^phi)` in `S(u)`. A certified infinite
//! branch continues as a stem of vertices of constant thickness `t`, one per
//! level, so its tail beyond the built vertex sums to
//! `p^(-k-1) u^(phi+1) (1 + u + ... + u^(t-1)) / (1 - u^t / p)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qpoly::{ratio, QPoly};
use crate::arith;
use crate::solver::count_solutions;
use crate::trunk::{BranchStatus, Trunk};

/// A denominator factor `1 - u^a / p^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DenominatorFactor {
    pub u_exponent: u32,
    pub p_exponent: u32,
}

impl DenominatorFactor {
    pub fn to_qpoly(self, p: u64) -> QPoly {
        let scale = ratio(BigInt::one(), arith::big_pow(p, self.p_exponent));
        QPoly::one().sub(&QPoly::monomial(scale, self.u_exponent as usize))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub p: u64,
    pub numerator: QPoly,
    pub denominator: QPoly,
    /// Factorization of `denominator`; empty when it is 1.
    pub factors: Vec<DenominatorFactor>,
    /// `N_e / p^e` for `e = 0..=horizon` when no closed form is certified.
    pub truncation: Option<Vec<BigRational>>,
    pub certified: bool,
}

impl RationalSeries {
    /// First `order` coefficients of the power series expansion. For an
    /// uncertified series only the first `truncation.len()` are meaningful.
    pub fn expand(&self, order: usize) -> Vec<BigRational> {
        self.numerator.series_div(&self.denominator, order)
    }

    /// Last level whose coefficient is known, `None` when certified (all are).
    pub fn horizon(&self) -> Option<usize> {
        self.truncation.as_ref().map(|t| t.len() - 1)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.certified {
            return write!(
                f,
                "{} + O(u^{})",
                self.numerator,
                self.horizon().unwrap_or(0) + 1
            );
        }
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / (", self.numerator)?;
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "({})", factor.to_qpoly(self.p))?;
        }
        f.write_str(")")
    }
}

fn p_inverse_power(p: u64, k: u32) -> BigRational {
    ratio(BigInt::one(), arith::big_pow(p, k))
}

/// `u^from + ... + u^to`, times `c`.
fn geometric_block(c: &BigRational, from: u32, to: u32) -> QPoly {
    let mut coeffs = vec![BigRational::zero(); to as usize + 1];
    for e in from..=to {
        coeffs[e as usize] = c.clone();
    }
    QPoly::new(coeffs)
}

/// `S(u)` of the polynomial behind `trunk`: a closed rational form when every
/// branch is finished or certified, otherwise the partial sum up to the
/// deepest fully determined level.
pub fn poincare_series(trunk: &Trunk) -> RationalSeries {
    let p = trunk.p();
    let content = trunk.content();
    if let Some(horizon) = trunk.undetermined_horizon() {
        let coeffs: Vec<BigRational> = (0..=content + horizon)
            .map(|e| {
                let n = count_solutions(trunk, e).expect("level within the determined horizon");
                BigRational::new(BigInt::from(n), arith::big_pow(p, e))
            })
            .collect();
        return RationalSeries {
            p,
            numerator: QPoly::new(coeffs.clone()),
            denominator: QPoly::one(),
            factors: Vec::new(),
            truncation: Some(coeffs),
            certified: false,
        };
    }

    let mut finite = QPoly::one();
    let mut tails: Vec<(u32, QPoly)> = Vec::new();
    for (id, node) in trunk.nodes().iter().enumerate().skip(1) {
        let t = node.thickness();
        let weight = p_inverse_power(p, node.k);
        finite = finite.add(&geometric_block(&weight, node.phi - t + 1, node.phi));
        if node.status.is_certified() {
            if let BranchStatus::CycleCertified { period } = node.status {
                // a repeating state sits on a stem of constant thickness
                debug_assert!((0..=period).all(|i| trunk.node(trunk.ancestor(id, i)).t == Some(t)));
            }
            let weight = p_inverse_power(p, node.k + 1);
            tails.push((t, geometric_block(&weight, node.phi + 1, node.phi + t)));
        }
    }

    let mut factors: Vec<DenominatorFactor> = tails
        .iter()
        .map(|&(t, _)| t)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|t| DenominatorFactor {
            u_exponent: t,
            p_exponent: 1,
        })
        .collect();
    let product = |fs: &[DenominatorFactor], skip: Option<u32>| {
        fs.iter()
            .filter(|f| Some(f.u_exponent) != skip)
            .fold(QPoly::one(), |acc, f| acc.mul(&f.to_qpoly(p)))
    };

    let mut numerator = finite.mul(&product(&factors, None));
    for (t, tail) in &tails {
        numerator = numerator.add(&tail.mul(&product(&factors, Some(*t))));
    }
    if content > 0 {
        // S(u) = 1 + u + ... + u^(t0-1) + u^t0 S0(u)
        let prefix = geometric_block(&BigRational::one(), 0, content - 1);
        numerator = prefix
            .mul(&product(&factors, None))
            .add(&QPoly::monomial(BigRational::one(), content as usize).mul(&numerator));
    }

    factors.retain(|f| {
        let (q, r) = numerator.div_rem(&f.to_qpoly(p));
        if r.is_zero() {
            numerator = q;
            false
        } else {
            true
        }
    });

    RationalSeries {
        p,
        denominator: product(&factors, None),
        numerator,
        factors,
        truncation: None,
        certified: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::trunk::build_trunk;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        ratio(BigInt::from(n), BigInt::from(d))
    }

    fn assert_matches_counts(trunk: &Trunk, series: &RationalSeries, order: u32) {
        let coeffs = series.expand(order as usize);
        for e in 0..order {
            let n = count_solutions(trunk, e).unwrap();
            let expected = BigRational::new(BigInt::from(n), arith::big_pow(trunk.p(), e));
            assert_eq!(coeffs[e as usize], expected, "coefficient of u^{e}");
        }
    }

    #[test]
    fn finite_trunk_gives_polynomial() {
        let p = &poly(&[3, 0, 1]) * &poly(&[9, 3, 1]);
        let trunk = build_trunk(&p, 3, 5).unwrap();
        let s = poincare_series(&trunk);
        assert!(s.certified);
        assert!(s.factors.is_empty());
        assert_eq!(
            s.numerator,
            QPoly::new(vec![q(1, 1), q(1, 3), q(1, 3), q(1, 3), q(1, 9)])
        );
        assert_eq!(s.to_string(), "1 + 1/3*u + 1/3*u^2 + 1/3*u^3 + 1/9*u^4");
    }

    #[test]
    fn simple_root_gives_geometric_series() {
        let trunk = build_trunk(&poly(&[0, 1]), 5, 3).unwrap();
        let s = poincare_series(&trunk);
        assert!(s.certified);
        assert_eq!(s.numerator, QPoly::one());
        assert_eq!(s.denominator, QPoly::new(vec![q(1, 1), q(-1, 5)]));
        assert_eq!(s.to_string(), "(1) / ((1 - 1/5*u))");
        assert_matches_counts(&trunk, &s, 12);
    }

    #[test]
    fn x_squared_cycle() {
        let trunk = build_trunk(&poly(&[0, 0, 1]), 3, 4).unwrap();
        let s = poincare_series(&trunk);
        assert!(s.certified);
        assert_eq!(
            s.factors,
            vec![DenominatorFactor {
                u_exponent: 2,
                p_exponent: 1
            }]
        );
        let coeffs = s.expand(12);
        for (e, c) in coeffs.iter().enumerate() {
            let n = 3i64.pow(e as u32 / 2);
            assert_eq!(*c, q(n, 3i64.pow(e as u32)));
        }
    }

    #[test]
    fn content_prefix() {
        // 9X at p = 3: N_e = 3^min(e, 2)
        let trunk = build_trunk(&poly(&[0, 9]), 3, 2).unwrap();
        let s = poincare_series(&trunk);
        assert!(s.certified);
        assert_matches_counts(&trunk, &s, 12);
    }

    #[test]
    fn mixed_branches() {
        let p = &(&poly(&[0, 1]) * &poly(&[1, -2, 1])) + &poly(&[25]);
        let trunk = build_trunk(&p, 5, 4).unwrap();
        let s = poincare_series(&trunk);
        assert!(s.certified);
        assert_matches_counts(&trunk, &s, 14);
        // (2X + 1)^2 at 3: -1/2 is a double 3-adic root with periodic digits
        let trunk = build_trunk(&poly(&[1, 4, 4]), 3, 4).unwrap();
        let s = poincare_series(&trunk);
        assert!(s.certified);
        assert_matches_counts(&trunk, &s, 14);
    }

    #[test]
    fn undetermined_falls_back_to_truncation() {
        let p = poly(&[-2, 0, 1]).pow(2);
        let trunk = build_trunk(&p, 7, 2).unwrap();
        let s = poincare_series(&trunk);
        assert!(!s.certified);
        assert_eq!(s.horizon(), Some(4));
        let t = s.truncation.as_ref().unwrap();
        assert_eq!(t[0], q(1, 1));
        assert_eq!(t[1], q(2, 7));
        assert_matches_counts(&trunk, &s, 5);
    }
}
