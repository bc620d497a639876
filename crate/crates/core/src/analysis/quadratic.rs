//! Trunk shapes of quadratic polynomials over an odd prime.
//!
//! Above a base stem of `l` thickness-2 vertices a quadratic trunk ends in one
//! of four ways: nothing (`K0`), a thickness-1 dead end (`K1`), two Hensel
//! branches (`K2`), or the stem never ends (`Kinf`). The kind is read off the
//! discriminant and cross-checked against the trunk itself.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{val_p, Polynomial, Valuation};
use crate::trunk::{build_trunk, BranchStatus, NodeId, Trunk};

/// Level bound used to inspect a `Kinf` stem.
const INFINITE_STEM_PROBE: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadraticKind {
    K0,
    K1,
    K2,
    Kinf,
}

impl fmt::Display for QuadraticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadraticKind::K0 => "K0",
            QuadraticKind::K1 => "K1",
            QuadraticKind::K2 => "K2",
            QuadraticKind::Kinf => "Kinf",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseLength {
    Finite(u32),
    Infinite,
}

impl fmt::Display for BaseLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseLength::Finite(l) => write!(f, "{l}"),
            BaseLength::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticClass {
    pub kind: QuadraticKind,
    pub base_length: BaseLength,
}

impl QuadraticClass {
    fn finite(kind: QuadraticKind, l: u32) -> Self {
        QuadraticClass {
            kind,
            base_length: BaseLength::Finite(l),
        }
    }

    fn infinite() -> Self {
        QuadraticClass {
            kind: QuadraticKind::Kinf,
            base_length: BaseLength::Infinite,
        }
    }
}

impl fmt::Display for QuadraticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (base length {})", self.kind, self.base_length)
    }
}

fn check_input(poly: &Polynomial, p: u64) -> Result<()> {
    if poly.degree() != Some(2) {
        let degree = poly.degree().map_or("none".to_string(), |d| d.to_string());
        return Err(Error::NotQuadratic(degree));
    }
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if poly.coeff(2).is_multiple_of(&BigInt::from(p)) {
        return Err(Error::LeadingCoefficientDivisible);
    }
    Ok(())
}

/// Classification from the discriminant `D = b^2 - 4ac` alone.
///
/// `D = 0` gives `Kinf`. Otherwise with `v = val_p(D)` the base has
/// `floor(v/2)` vertices, and the kind is `K1` for odd `v`, `K2` when the
/// unit part of `D` is a square modulo `p` and `K0` when it is not.
pub fn classify_closed_form(poly: &Polynomial, p: u64) -> Result<QuadraticClass> {
    check_input(poly, p)?;
    let (a, b, c) = (poly.coeff(2), poly.coeff(1), poly.coeff(0));
    let d = &b * &b - BigInt::from(4) * a * c;
    let pb = BigInt::from(p);
    let v = match val_p(&d, &pb) {
        Valuation::Infinite => return Ok(QuadraticClass::infinite()),
        Valuation::Finite(v) => v,
    };
    let l = v / 2;
    if v % 2 == 1 {
        return Ok(QuadraticClass::finite(QuadraticKind::K1, l));
    }
    let unit = (&d / crate::arith::big_pow(p, v)).mod_floor(&pb);
    let euler = unit.modpow(&BigInt::from((p - 1) / 2), &pb);
    let kind = if euler.is_one() {
        QuadraticKind::K2
    } else {
        QuadraticKind::K0
    };
    Ok(QuadraticClass::finite(kind, l))
}

/// Reads the class off a built quadratic trunk; `None` when the trunk has none
/// of the four shapes.
pub fn trunk_shape(trunk: &Trunk) -> Option<QuadraticClass> {
    let mut id: NodeId = 0;
    let mut l = 0u32;
    loop {
        let node = trunk.node(id);
        if !node.is_root() {
            match node.status {
                BranchStatus::CycleCertified { .. } | BranchStatus::Undetermined => {
                    return Some(QuadraticClass::infinite());
                }
                _ => {}
            }
        }
        let children: Vec<_> = node.children.iter().map(|&c| trunk.node(c)).collect();
        match children.as_slice() {
            [] if node.status == BranchStatus::Leaf => {
                return Some(QuadraticClass::finite(QuadraticKind::K0, l));
            }
            [only] if only.t == Some(2) => {
                l += 1;
                id = node.children[0];
            }
            [only] if only.t == Some(1) && only.status == BranchStatus::Leaf => {
                return Some(QuadraticClass::finite(QuadraticKind::K1, l));
            }
            [x, y]
                if [x, y]
                    .iter()
                    .all(|c| c.t == Some(1) && c.status == BranchStatus::HenselCertified) =>
            {
                return Some(QuadraticClass::finite(QuadraticKind::K2, l));
            }
            _ => return None,
        }
    }
}

/// Level bound at which the trunk of a quadratic with the given class shows
/// its whole shape.
pub fn inspection_depth(class: QuadraticClass) -> u32 {
    match class.base_length {
        BaseLength::Finite(l) => 2 * l + 4,
        BaseLength::Infinite => INFINITE_STEM_PROBE,
    }
}

/// Classifies a quadratic over an odd prime `p` not dividing its leading
/// coefficient. The discriminant rule and the built trunk must agree.
pub fn classify_quadratic(poly: &Polynomial, p: u64) -> Result<QuadraticClass> {
    let closed = classify_closed_form(poly, p)?;
    let trunk = build_trunk(poly, p, inspection_depth(closed))?;
    match trunk_shape(&trunk) {
        Some(shape) if shape == closed => Ok(closed),
        shape => Err(Error::ClassificationMismatch {
            closed_form: closed.to_string(),
            trunk: shape.map_or("unrecognized".to_string(), |s| s.to_string()),
        }),
    }
}

/// True when the discriminant of a quadratic vanishes.
pub fn has_zero_discriminant(poly: &Polynomial) -> bool {
    let (a, b, c) = (poly.coeff(2), poly.coeff(1), poly.coeff(0));
    (&b * &b - BigInt::from(4) * a * c).is_zero()
}
