//! Solutions of polynomial congruences `P(x) = 0 (mod p^e)` and `(mod n)`
//! through the trunk of `P`, a compact subtree of the p-adic solution tree.
//!
//! ```
//! use padic_trunk::{build_trunk, count_solutions, enumerate_solutions, parse};
//!
//! let p = parse("(X^2+3)*(X^2+3X+9)").unwrap();
//! let trunk = build_trunk(&p, 3, 5).unwrap();
//! assert_eq!(count_solutions(&trunk, 4).unwrap(), 9u32.into());
//! let xs = enumerate_solutions(&trunk, 4).unwrap();
//! assert_eq!(xs.first().unwrap(), &3.into());
//! ```

pub mod analysis;
pub mod arith;
pub mod bench;
pub mod config;
pub mod error;
pub mod parser;
pub mod poly;
pub mod report;
pub mod solver;
pub mod trunk;

pub use analysis::{
    classify_quadratic, poincare_series, BaseLength, QuadraticClass, QuadraticKind, RationalSeries,
};
pub use config::Limits;
pub use error::{Error, Result};
pub use parser::{parse, print, ParseError, ParseErrorKind};
pub use poly::{val_p, Polynomial, PrimePower, Valuation};
pub use solver::{
    ball_decomposition, brute_force, count_solutions, crt_solve, enumerate_solutions, is_solution,
    SolutionBall, SolutionSet,
};
pub use trunk::{
    build_trunk, build_trunk_with, hensel_lift, residual_degree, thickness, BranchStatus, Trunk,
    TrunkNode,
};
