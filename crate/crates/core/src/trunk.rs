//! The trunk of a polynomial: the compact subtree of the solution tree from
//! which every solution modulo every power of `p` can be reconstructed.
//!
//! Each vertex `(r, k)` carries its thickness `t` (the exponent of `p` split
//! off from `P_{k-1}(rho + pX)`), the tree-top value `phi = t_1 + ... + t_k`
//! and the successor polynomial `P_k` with `P(r + p^k X) = p^phi P_k(X)`.
//! Branches are expanded level by level; thickness-1 branches and branches
//! whose `(successor, t)` state repeats are certified infinite and left
//! unexpanded, their continuation being reconstructed on demand.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchStatus {
    /// Children were computed.
    Expanded,
    /// The successor has no root modulo `p`.
    Leaf,
    /// Thickness 1 with a root: a unique infinite thickness-1 continuation.
    HenselCertified,
    /// `(successor, t)` equals the state `period` levels up the same branch.
    CycleCertified { period: u32 },
    /// Reached the level bound without a certificate.
    Undetermined,
}

impl BranchStatus {
    pub fn is_certified(self) -> bool {
        matches!(
            self,
            BranchStatus::HenselCertified | BranchStatus::CycleCertified { .. }
        )
    }
}

impl fmt::Display for BranchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchStatus::Expanded => f.write_str("expanded"),
            BranchStatus::Leaf => f.write_str("leaf"),
            BranchStatus::HenselCertified => f.write_str("hensel-certified"),
            BranchStatus::CycleCertified { period } => write!(f, "cycle-certified({period})"),
            BranchStatus::Undetermined => f.write_str("undetermined"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrunkNode {
    /// Residue, `0 <= r < p^k`.
    pub r: BigInt,
    pub k: u32,
    /// Base-`p` digit added at this level: `r = parent.r + digit * p^(k-1)`.
    pub digit: u64,
    /// Thickness; `None` only on the root `(0, 0)`.
    pub t: Option<u32>,
    pub phi: u32,
    pub successor: Polynomial,
    pub residual_degree: u32,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub status: BranchStatus,
}

impl TrunkNode {
    /// Thickness of a non-root node.
    pub fn thickness(&self) -> u32 {
        self.t.expect("root node carries no thickness")
    }

    pub fn is_root(&self) -> bool {
        self.parent.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct Trunk {
    original: Polynomial,
    normalized: Polynomial,
    content: u32,
    p: u64,
    nodes: Vec<TrunkNode>,
    built_depth: u32,
}

/// Thickness of `poly` at `r`: the largest `t` with `poly(r + pX) = p^t Q(X)`.
///
/// Returns `(t, Q)`. `poly` must not be divisible by `p` and `r` must be a
/// root modulo `p`.
pub fn thickness(poly: &Polynomial, r: &BigInt, p: u64) -> Result<(u32, Polynomial)> {
    let pb = BigInt::from(p);
    let (content, _) = poly.p_content(&pb)?;
    if content > 0 {
        return Err(Error::Unnormalized { p });
    }
    if !poly.evaluate(r, Some(&pb)).is_zero() {
        return Err(Error::NotARoot {
            r: r.to_string(),
            p,
        });
    }
    Ok(split_thickness(poly, r, &pb))
}

fn split_thickness(poly: &Polynomial, r: &BigInt, p: &BigInt) -> (u32, Polynomial) {
    poly.shift_scale(r, p)
        .p_content(p)
        .expect("shift of a nonzero polynomial is nonzero")
}

/// Degree of the successor modulo `p`.
pub fn residual_degree(successor: &Polynomial, p: u64) -> Result<u32> {
    let pb = BigInt::from(p);
    match successor.reduce_mod(&pb).degree() {
        Some(d) => Ok(d as u32),
        None if successor.is_zero() => Err(Error::ZeroPolynomial),
        None => Err(Error::Unnormalized { p }),
    }
}

/// All roots of `poly` modulo `p` in `[0, p)`, by exhaustive scan.
pub fn roots_mod_p(poly: &Polynomial, p: u64) -> Vec<u64> {
    let coeffs = poly.residues_u64(p);
    if coeffs.iter().all(|&c| c == 0) {
        return (0..p).collect();
    }
    let m = p as u128;
    (0..p)
        .filter(|&x| {
            let x = x as u128;
            coeffs
                .iter()
                .rev()
                .fold(0u128, |acc, &c| (acc * x + c as u128) % m)
                == 0
        })
        .collect()
}

/// The children a successor polynomial would produce: `(rho, t, next successor)`
/// for every root `rho` of `successor` modulo `p`, in increasing `rho`.
pub fn successor_children(successor: &Polynomial, p: u64) -> Vec<(u64, u32, Polynomial)> {
    let pb = BigInt::from(p);
    roots_mod_p(successor, p)
        .into_iter()
        .map(|rho| {
            let (t, q) = split_thickness(successor, &BigInt::from(rho), &pb);
            (rho, t, q)
        })
        .collect()
}

/// Lift a simple root `x1` of `poly` modulo `p` to the unique root modulo `p^e`
/// congruent to `x1` modulo `p`.
///
/// One digit per step: with `D = P'(x1)^{-1} mod p`, the correction at level
/// `j` is `h = -(P(x_j) / p^j) * D mod p` and `x_{j+1} = x_j + h p^j`.
pub fn hensel_lift(poly: &Polynomial, x1: &BigInt, p: u64, e: u32) -> Result<BigInt> {
    if e == 0 {
        return Err(Error::InvalidArgument("lift level must be positive".into()));
    }
    let pb = BigInt::from(p);
    let x1 = x1.mod_floor(&pb);
    if !poly.evaluate(&x1, Some(&pb)).is_zero() {
        return Err(Error::NotSimpleRoot(format!(
            "P({x1}) is not divisible by {p}"
        )));
    }
    let slope = poly.derivative().evaluate(&x1, Some(&pb));
    let d = arith::mod_inverse(&slope, &pb)
        .ok_or_else(|| Error::NotSimpleRoot(format!("P'({x1}) is divisible by {p}")))?;
    let mut x = x1;
    let mut pj = pb.clone();
    for _ in 1..e {
        let value = poly.evaluate(&x, None);
        debug_assert!((&value % &pj).is_zero());
        let h = (-(value / &pj) * &d).mod_floor(&pb);
        x += h * &pj;
        pj *= &pb;
    }
    Ok(x)
}

pub fn build_trunk(poly: &Polynomial, p: u64, max_level: u32) -> Result<Trunk> {
    build_trunk_with(poly, p, max_level, &Limits::default())
}

/// Build the trunk of `poly` at `p` expanded up to level `max_level`.
pub fn build_trunk_with(
    poly: &Polynomial,
    p: u64,
    max_level: u32,
    limits: &Limits,
) -> Result<Trunk> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if max_level == 0 {
        return Err(Error::InvalidArgument(
            "max_level must be at least 1".into(),
        ));
    }
    if p > limits.max_prime {
        return Err(Error::PrimeTooLarge {
            p: p.to_string(),
            limit: limits.max_prime,
        });
    }
    if !arith::is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let pb = BigInt::from(p);
    let (content, normalized) = poly.p_content(&pb)?;
    let root = TrunkNode {
        r: BigInt::zero(),
        k: 0,
        digit: 0,
        t: None,
        phi: 0,
        residual_degree: reduced_degree(&normalized, &pb),
        successor: normalized.clone(),
        parent: None,
        children: Vec::new(),
        status: BranchStatus::Expanded,
    };
    let mut trunk = Trunk {
        original: poly.clone(),
        normalized,
        content,
        p,
        nodes: vec![root],
        built_depth: max_level,
    };

    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let roots = roots_mod_p(&trunk.nodes[id].successor, p);
        let node = &trunk.nodes[id];
        let (r, k, phi) = (node.r.clone(), node.k, node.phi);
        let status = if roots.is_empty() {
            BranchStatus::Leaf
        } else if node.t == Some(1) {
            BranchStatus::HenselCertified
        } else if let Some(period) = trunk.find_cycle(id) {
            BranchStatus::CycleCertified { period }
        } else if k >= max_level {
            BranchStatus::Undetermined
        } else {
            BranchStatus::Expanded
        };
        trunk.nodes[id].status = status;
        if status != BranchStatus::Expanded {
            continue;
        }

        let pk = arith::big_pow(p, k);
        let mut children = Vec::with_capacity(roots.len());
        for rho in roots {
            let (t, successor) =
                split_thickness(&trunk.nodes[id].successor, &BigInt::from(rho), &pb);
            let child = TrunkNode {
                r: &r + &pk * rho,
                k: k + 1,
                digit: rho,
                t: Some(t),
                phi: phi + t,
                residual_degree: reduced_degree(&successor, &pb),
                successor,
                parent: Some(id),
                children: Vec::new(),
                status: BranchStatus::Expanded,
            };
            let child_id = trunk.nodes.len();
            trunk.nodes.push(child);
            children.push(child_id);
            queue.push_back(child_id);
        }
        trunk.nodes[id].children = children;
    }
    Ok(trunk)
}

fn reduced_degree(poly: &Polynomial, p: &BigInt) -> u32 {
    poly.reduce_mod(p)
        .degree()
        .expect("successor is not divisible by p") as u32
}

impl Trunk {
    /// The polynomial the trunk was built from, before content removal.
    pub fn original(&self) -> &Polynomial {
        &self.original
    }

    /// `P0` with `P = p^content * P0`; all trunk data refers to `P0`.
    pub fn normalized(&self) -> &Polynomial {
        &self.normalized
    }

    pub fn content(&self) -> u32 {
        self.content
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn built_depth(&self) -> u32 {
        self.built_depth
    }

    pub fn nodes(&self) -> &[TrunkNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &TrunkNode {
        &self.nodes[id]
    }

    pub fn root(&self) -> &TrunkNode {
        &self.nodes[0]
    }

    /// `d_p`, the degree of `P0` modulo `p`.
    pub fn reduced_degree(&self) -> u32 {
        self.nodes[0].residual_degree
    }

    /// Number of non-root vertices.
    pub fn vertex_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Vertex count per level, index 0 being the root level.
    pub fn level_widths(&self) -> Vec<usize> {
        let depth = self.nodes.iter().map(|n| n.k).max().unwrap_or(0) as usize;
        let mut widths = vec![0; depth + 1];
        for n in &self.nodes {
            widths[n.k as usize] += 1;
        }
        widths
    }

    /// Non-root vertices without children: finite leaves, certified
    /// infinite branches and undetermined frontiers.
    pub fn leaves(&self) -> impl Iterator<Item = &TrunkNode> {
        self.nodes
            .iter()
            .filter(|n| !n.is_root() && n.children.is_empty())
    }

    /// True when no branch is undetermined.
    pub fn is_complete(&self) -> bool {
        self.nodes
            .iter()
            .all(|n| n.status != BranchStatus::Undetermined)
    }

    /// Smallest `phi` among undetermined vertices. Levels of `P0` up to this
    /// value are fully determined by the trunk.
    pub fn undetermined_horizon(&self) -> Option<u32> {
        self.nodes
            .iter()
            .filter(|n| n.status == BranchStatus::Undetermined)
            .map(|n| n.phi)
            .min()
    }

    /// Ancestor `steps` levels above `id`.
    pub fn ancestor(&self, mut id: NodeId, steps: u32) -> NodeId {
        for _ in 0..steps {
            id = self.nodes[id].parent.expect("ancestor above the root");
        }
        id
    }

    /// Unique root modulo `p` of a Hensel-certified vertex's successor.
    pub(crate) fn hensel_root(&self, id: NodeId) -> u64 {
        let roots = roots_mod_p(&self.nodes[id].successor, self.p);
        debug_assert_eq!(roots.len(), 1);
        roots[0]
    }

    fn find_cycle(&self, id: NodeId) -> Option<u32> {
        let node = &self.nodes[id];
        node.t?;
        let mut cursor = node.parent;
        while let Some(a) = cursor {
            let anc = &self.nodes[a];
            if anc.t.is_none() {
                break;
            }
            if anc.t == node.t && anc.successor == node.successor {
                return Some(node.k - anc.k);
            }
            cursor = anc.parent;
        }
        None
    }

    /// `p^k` as a big integer.
    pub(crate) fn p_pow(&self, k: u32) -> BigInt {
        arith::big_pow(self.p, k)
    }

    /// Virtual children of the vertex described by `cursor`: the built children
    /// for an expanded vertex, and the ancestor's children replayed at the
    /// current position for a cycle-certified one.
    pub(crate) fn virtual_children(&self, cursor: &Cursor) -> Vec<Cursor> {
        let template = match self.nodes[cursor.template].status {
            BranchStatus::Expanded => cursor.template,
            BranchStatus::CycleCertified { period } => self.ancestor(cursor.template, period),
            _ => return Vec::new(),
        };
        let pk = self.p_pow(cursor.k);
        self.nodes[template]
            .children
            .iter()
            .map(|&c| {
                let child = &self.nodes[c];
                Cursor {
                    template: c,
                    r: &cursor.r + &pk * child.digit,
                    k: cursor.k + 1,
                    phi: cursor.phi + child.thickness(),
                }
            })
            .collect()
    }

    pub(crate) fn root_cursors(&self) -> Vec<Cursor> {
        self.nodes[0]
            .children
            .iter()
            .map(|&c| Cursor::at(&self.nodes[c], c))
            .collect()
    }
}

/// A (possibly virtual) trunk vertex: an actual position `(r, k, phi)` whose
/// subtree is shaped like the built vertex `template`.
#[derive(Clone, Debug)]
pub(crate) struct Cursor {
    pub template: NodeId,
    pub r: BigInt,
    pub k: u32,
    pub phi: u32,
}

impl Cursor {
    fn at(node: &TrunkNode, id: NodeId) -> Self {
        Cursor {
            template: id,
            r: node.r.clone(),
            k: node.k,
            phi: node.phi,
        }
    }
}

/// Exact check of the tree-top identity `P0(r + p^k X) = p^phi * successor(X)`.
pub fn tree_top_identity_holds(trunk: &Trunk, node: &TrunkNode) -> bool {
    let pk = trunk.p_pow(node.k);
    let lhs = trunk.normalized.shift_scale(&node.r, &pk);
    let rhs = node.successor.scale(&trunk.p_pow(node.phi));
    lhs == rhs
}

impl fmt::Display for Trunk {
    /// Indented tree, one vertex per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(
            trunk: &Trunk,
            id: NodeId,
            depth: usize,
            f: &mut fmt::Formatter<'_>,
        ) -> fmt::Result {
            let n = &trunk.nodes[id];
            let indent = "  ".repeat(depth);
            match n.t {
                None => writeln!(f, "{indent}(0,0) root s={} {}", n.residual_degree, n.status)?,
                Some(t) => writeln!(
                    f,
                    "{indent}({},{}) t={} phi={} s={} {}",
                    n.r, n.k, t, n.phi, n.residual_degree, n.status
                )?,
            }
            for &c in &n.children {
                walk(trunk, c, depth + 1, f)?;
            }
            Ok(())
        }
        walk(self, 0, 0, f)
    }
}

/// Level bound large enough to determine every solution modulo `p^e`.
pub fn level_for_exponent(e: u32) -> u32 {
    e.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn quartic() -> Polynomial {
        &poly(&[3, 0, 1]) * &poly(&[9, 3, 1])
    }

    // X(X-1)^2 + 25
    fn cubic() -> Polynomial {
        &(&poly(&[0, 1]) * &poly(&[1, -2, 1])) + &poly(&[25])
    }

    fn summary(trunk: &Trunk) -> Vec<(i64, u32, u32, BranchStatus)> {
        trunk
            .nodes()
            .iter()
            .skip(1)
            .map(|n| {
                (
                    n.r.to_string().parse().unwrap(),
                    n.k,
                    n.thickness(),
                    n.status,
                )
            })
            .collect()
    }

    #[test]
    fn thickness_examples() {
        let (t, q) = thickness(&quartic(), &big(0), 3).unwrap();
        assert_eq!(t, 3);
        assert_eq!(q, &poly(&[1, 0, 3]) * &poly(&[1, 1, 1]));

        let p1 = &poly(&[1, 0, 3]) * &poly(&[1, 1, 1]);
        let (t, q) = thickness(&p1, &big(1), 3).unwrap();
        assert_eq!(t, 1);
        assert_eq!(q, &poly(&[4, 18, 27]) * &poly(&[1, 3, 3]));

        for p in [2i64, 3, 5, 7, 11] {
            let (t, q) = thickness(&poly(&[0, p, p, 1]), &big(0), p as u64).unwrap();
            assert_eq!(t, 2);
            assert_eq!(q, poly(&[0, 1, p, p]));
        }
    }

    #[test]
    fn thickness_errors() {
        assert!(matches!(
            thickness(&poly(&[1, 0, 1]), &big(0), 3),
            Err(Error::NotARoot { .. })
        ));
        assert_eq!(
            thickness(&poly(&[3, 6]), &big(0), 3),
            Err(Error::Unnormalized { p: 3 })
        );
        assert_eq!(
            thickness(&Polynomial::zero(), &big(0), 3),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn residual_degree_examples() {
        assert_eq!(residual_degree(&poly(&[0, 1, 5, 5]), 5).unwrap(), 1);
        let q = &poly(&[1, 0, 3]) * &poly(&[1, 1, 1]);
        assert_eq!(residual_degree(&q, 3).unwrap(), 2);
        assert_eq!(residual_degree(&poly(&[1]), 7).unwrap(), 0);
        assert_eq!(
            residual_degree(&poly(&[7, 14]), 7),
            Err(Error::Unnormalized { p: 7 })
        );
    }

    #[test]
    fn trunk_of_quartic() {
        let trunk = build_trunk(&quartic(), 3, 5).unwrap();
        assert_eq!(
            summary(&trunk),
            vec![
                (0, 1, 3, BranchStatus::Expanded),
                (3, 2, 1, BranchStatus::Leaf)
            ]
        );
        assert_eq!(trunk.node(1).phi, 3);
        assert_eq!(trunk.node(2).phi, 4);
        assert_eq!(trunk.root().residual_degree, 4);
    }

    #[test]
    fn trunk_of_x() {
        let trunk = build_trunk(&poly(&[0, 1]), 5, 3).unwrap();
        assert_eq!(
            summary(&trunk),
            vec![(0, 1, 1, BranchStatus::HenselCertified)]
        );
    }

    #[test]
    fn trunk_of_x_squared_cycles() {
        let trunk = build_trunk(&poly(&[0, 0, 1]), 3, 6).unwrap();
        assert_eq!(
            summary(&trunk),
            vec![
                (0, 1, 2, BranchStatus::Expanded),
                (0, 2, 2, BranchStatus::CycleCertified { period: 1 }),
            ]
        );
        assert_eq!(trunk.node(2).successor, poly(&[0, 0, 1]));
    }

    #[test]
    fn trunk_of_cubic() {
        let trunk = build_trunk(&cubic(), 5, 5).unwrap();
        let s = summary(&trunk);
        assert_eq!(s[0], (0, 1, 1, BranchStatus::HenselCertified));
        assert_eq!(s[1], (1, 1, 2, BranchStatus::Expanded));
        assert_eq!(s.len(), 4);
        for child in &s[2..] {
            assert_eq!(child.1, 2);
            assert_eq!(child.2, 1);
            assert_eq!(child.3, BranchStatus::HenselCertified);
        }
    }

    #[test]
    fn constant_polynomial_has_only_the_root() {
        let trunk = build_trunk(&poly(&[7]), 3, 4).unwrap();
        assert_eq!(trunk.vertex_count(), 0);
        assert_eq!(trunk.root().status, BranchStatus::Leaf);
        let trunk = build_trunk(&poly(&[9]), 3, 4).unwrap();
        assert_eq!(trunk.content(), 2);
        assert_eq!(trunk.vertex_count(), 0);
    }

    #[test]
    fn builder_rejections() {
        assert_eq!(
            build_trunk(&Polynomial::zero(), 3, 2).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert!(matches!(
            build_trunk(&poly(&[0, 1]), 9, 2),
            Err(Error::NotPrime(_))
        ));
        assert!(matches!(
            build_trunk(&poly(&[0, 1]), 3, 0),
            Err(Error::InvalidArgument(_))
        ));
        let limits = Limits::default().with_max_prime(100);
        assert!(matches!(
            build_trunk_with(&poly(&[0, 1]), 101, 2, &limits),
            Err(Error::PrimeTooLarge { .. })
        ));
    }

    #[test]
    fn undetermined_branch_at_level_bound() {
        // (X^2 - 2)^2 at 7: double 7-adic roots +-sqrt(2), successors never repeat
        let p = poly(&[-2, 0, 1]).pow(2);
        let trunk = build_trunk(&p, 7, 3).unwrap();
        assert!(!trunk.is_complete());
        assert!(trunk
            .leaves()
            .all(|n| n.status == BranchStatus::Undetermined && n.k == 3));
        assert_eq!(trunk.undetermined_horizon(), Some(6));
    }

    #[test]
    fn hensel_lift_examples() {
        let p = cubic();
        assert_eq!(hensel_lift(&p, &big(0), 5, 3).unwrap(), big(100));
        assert_eq!(hensel_lift(&p, &big(0), 5, 4).unwrap(), big(600));
        assert_eq!(hensel_lift(&poly(&[0, 1]), &big(0), 7, 5).unwrap(), big(0));
        assert!(matches!(
            hensel_lift(&p, &big(1), 5, 3),
            Err(Error::NotSimpleRoot(_))
        ));
        assert!(matches!(
            hensel_lift(&p, &big(2), 5, 3),
            Err(Error::NotSimpleRoot(_))
        ));
    }

    #[test]
    fn hensel_lift_is_a_root() {
        let p = poly(&[-2, 0, 1]);
        for x1 in [3, 4] {
            let x = hensel_lift(&p, &big(x1), 7, 12).unwrap();
            let m = num_traits::pow(big(7), 12);
            assert!(p.evaluate(&x, Some(&m)).is_zero());
            assert_eq!(x.mod_floor(&big(7)), big(x1));
            assert!(x >= big(0) && x < m);
        }
    }

    #[test]
    fn display_is_indented() {
        let trunk = build_trunk(&quartic(), 3, 5).unwrap();
        let text = trunk.to_string();
        assert_eq!(
            text,
            "(0,0) root s=4 expanded\n  (0,1) t=3 phi=3 s=2 expanded\n    (3,2) t=1 phi=4 s=0 leaf\n"
        );
    }
}
