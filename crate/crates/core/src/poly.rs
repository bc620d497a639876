//! Exact univariate polynomials over the integers.
//!
//! Coefficients are stored low-to-high: `coeffs[i]` is the coefficient of `X^i`.
//! Trailing zeros are never stored, so the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

/// p-adic valuation of an integer; zero has infinite valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `i` with `p^i | x`.
pub fn val_p(x: &BigInt, p: &BigInt) -> Valuation {
    assert!(*p >= BigInt::from(2), "valuation base must be at least 2");
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let mut v = 0;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        rest = q;
        v += 1;
    }
}

/// A prime power `p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: BigUint,
    e: u32,
}

impl PrimePower {
    pub fn new(p: BigUint, e: u32) -> Result<Self> {
        if !arith::is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(PrimePower { p, e })
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> BigUint {
        num_traits::pow(self.p.clone(), self.e as usize)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Polynomial::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_coeffs<T: Into<BigInt> + Copy>(coeffs: &[T]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation, optionally reduced into `[0, m)`.
    pub fn evaluate(&self, x: &BigInt, m: Option<&BigInt>) -> BigInt {
        match m {
            None => self
                .coeffs
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, c| acc * x + c),
            Some(m) => {
                let x = x.mod_floor(m);
                self.coeffs
                    .iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| (acc * &x + c).mod_floor(m))
            }
        }
    }

    /// Exact `P(r + pX)`, by Horner composition with the linear polynomial `r + pX`.
    pub fn shift_scale(&self, r: &BigInt, p: &BigInt) -> Polynomial {
        let mut acc: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (r + pX) + c
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] += a * r;
                next[i + 1] += a * p;
            }
            next[0] += c;
            acc = next;
        }
        Polynomial::new(acc)
    }

    /// Splits `P = p^t0 * Q` with `p` not dividing `Q`.
    pub fn p_content(&self, p: &BigInt) -> Result<(u32, Polynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let t0 = self
            .coeffs
            .iter()
            .filter_map(|c| val_p(c, p).finite())
            .min()
            .expect("nonzero polynomial has a nonzero coefficient");
        if t0 == 0 {
            return Ok((0, self.clone()));
        }
        let scale = num_traits::pow(p.clone(), t0 as usize);
        let q = self.coeffs.iter().map(|c| c / &scale).collect();
        Ok((t0, Polynomial::new(q)))
    }

    /// Coefficients reduced into `[0, p)`; the degree of the result is `d_p`.
    pub fn reduce_mod(&self, p: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c.mod_floor(p)).collect())
    }

    /// Coefficients reduced mod a machine-sized `p`, ascending, untrimmed.
    pub(crate) fn residues_u64(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue below p"))
            .collect()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut n: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest absolute coefficient, zero for the zero polynomial.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
