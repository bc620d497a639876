use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in `u` with exact rational coefficients, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly::monomial(BigRational::one(), 0)
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree];
        coeffs.push(c);
        QPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// `(quotient, remainder)` of Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.0[dd].clone();
        let mut rem = self.0.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (QPoly::zero(), self.clone());
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// First `n` coefficients of the power series `self / denominator`.
    pub fn series_div(&self, denominator: &QPoly, n: usize) -> Vec<BigRational> {
        let d0 = denominator.coeff(0);
        assert!(!d0.is_zero(), "denominator needs a nonzero constant term");
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeff(i);
            for j in 1..=i.min(denominator.0.len().saturating_sub(1)) {
                c -= denominator.coeff(j) * &out[i - j];
            }
            out.push(c / &d0);
        }
        out
    }
}

impl fmt::Display for QPoly {
    /// Ascending powers of `u`, e.g. `1 + 1/3*u - 2*u^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let abs = c.abs();
            let unit = abs.is_one();
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !unit {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        f.write_str("u")?;
                    } else {
                        write!(f, "u^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}
