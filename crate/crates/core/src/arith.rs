//! Integer helpers: primality, factorization, modular inverses, CRT.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Trial division runs through every prime below this bound before Pollard rho.
pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// Pollard rho iteration budget per attempt; several seeds are tried.
const RHO_ITERATIONS: u64 = 2_000_000;
const RHO_SEEDS: u64 = 12;

// Miller-Rabin with these bases is deterministic for n < 3.3e24.
const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const EXTRA_BASES: [u32; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Miller-Rabin. Deterministic below 3.3e24, probabilistic (25 bases) above.
pub fn is_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &q in &DETERMINISTIC_BASES {
        let q = BigUint::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let bound: BigUint = "3317044064679887385961981".parse().expect("constant");
    let extra: &[u32] = if *n < bound { &[] } else { &EXTRA_BASES };
    'witness: for &a in DETERMINISTIC_BASES.iter().chain(extra) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut rest = n.clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for &q in small_primes() {
        let qb = BigUint::from(q);
        if &qb * &qb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &qb).is_zero() {
            rest /= &qb;
            e += 1;
        }
        if e > 0 {
            factors.push((qb, e));
        }
    }
    if rest > BigUint::one() {
        let mut pending = vec![rest];
        while let Some(m) = pending.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                match factors.iter_mut().find(|(p, _)| *p == m) {
                    Some(entry) => entry.1 += 1,
                    None => factors.push((m, 1)),
                }
                continue;
            }
            let d = pollard_rho(&m).ok_or_else(|| {
                Error::Factorization(format!(
                    "no factor of {m} found within the iteration budget"
                ))
            })?;
            pending.push(&m / &d);
            pending.push(d);
        }
    }
    factors.sort();
    Ok(factors)
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of a composite `n`.
fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for seed in 1..=RHO_SEEDS {
        let c = BigUint::from(seed);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(seed + 1);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut steps = 0u64;
        const BATCH: u64 = 64;
        while g.is_one() && steps < RHO_ITERATIONS {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
                steps += BATCH;
            }
            r *= 2;
        }
        if g == *n {
            // batch overshot; replay one step at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && g < *n {
            return Some(g);
        }
    }
    None
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let ext = a.extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(m))
}

/// Combine `x ≡ a (mod m)` and `x ≡ b (mod n)` for coprime `m`, `n`.
/// `m_inv_mod_n` is `m^{-1} mod n`, precomputed by the caller.
pub fn crt_pair(a: &BigInt, m: &BigInt, b: &BigInt, n: &BigInt, m_inv_mod_n: &BigInt) -> BigInt {
    let k = ((b - a) * m_inv_mod_n).mod_floor(n);
    (a + m * k).mod_floor(&(m * n))
}

pub(crate) fn big_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub(crate) fn big_pow_u(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}
