//! Polynomial expressions such as `(X^2+3)*(X^2+3X+9)`.
//!
//! Precedence from tightest: `^`, unary minus, `*` (also implicit before a
//! variable or `(`), binary `+`/`-`. Exponents are non-negative integer
//! literals. The variable name is matched case-insensitively.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::Polynomial;

pub const MAX_EXPONENT: u32 = 10_000;
/// Expressions whose expansion would exceed this degree are rejected.
pub const MAX_DEGREE: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyInput,
    InvalidCharacter(char),
    UnexpectedToken {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
    UnbalancedParenthesis,
    UnknownIdentifier(String),
    NonIntegerLiteral(String),
    NonIntegerExponent,
    NegativeExponent,
    ExponentTooLarge(String),
    DegreeTooLarge(u64),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::EmptyInput => f.write_str("empty expression"),
            ParseErrorKind::InvalidCharacter(c) => write!(f, "invalid character '{c}'"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "unexpected '{found}', expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::UnbalancedParenthesis => f.write_str("unbalanced parenthesis"),
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier '{name}'"),
            ParseErrorKind::NonIntegerLiteral(s) => write!(f, "non-integer literal '{s}'"),
            ParseErrorKind::NonIntegerExponent => {
                f.write_str("exponent must be a non-negative integer literal")
            }
            ParseErrorKind::NegativeExponent => f.write_str("negative exponent"),
            ParseErrorKind::ExponentTooLarge(s) => {
                write!(f, "exponent {s} exceeds the limit {MAX_EXPONENT}")
            }
            ParseErrorKind::DegreeTooLarge(d) => {
                write!(f, "expanded degree {d} exceeds the limit {MAX_DEGREE}")
            }
        }
    }
}

/// A syntax error with the 0-based character offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

/// Unexpanded expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    Var,
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    /// Direct evaluation at `x`, without expanding.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        match self {
            PolyExpr::Int(n) => n.clone(),
            PolyExpr::Var => x.clone(),
            PolyExpr::Neg(a) => -a.eval(x),
            PolyExpr::Add(a, b) => a.eval(x) + b.eval(x),
            PolyExpr::Sub(a, b) => a.eval(x) - b.eval(x),
            PolyExpr::Mul(a, b) => a.eval(x) * b.eval(x),
            PolyExpr::Pow(a, n) => num_traits::pow(a.eval(x), *n as usize),
        }
    }

    /// Upper bound on the degree of the expansion.
    pub fn degree_bound(&self) -> u64 {
        match self {
            PolyExpr::Int(_) => 0,
            PolyExpr::Var => 1,
            PolyExpr::Neg(a) => a.degree_bound(),
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => a.degree_bound().max(b.degree_bound()),
            PolyExpr::Mul(a, b) => a.degree_bound().saturating_add(b.degree_bound()),
            PolyExpr::Pow(a, n) => a.degree_bound().saturating_mul(*n as u64),
        }
    }

    pub fn expand(&self) -> Polynomial {
        match self {
            PolyExpr::Int(n) => Polynomial::constant(n.clone()),
            PolyExpr::Var => Polynomial::x(),
            PolyExpr::Neg(a) => -a.expand(),
            PolyExpr::Add(a, b) => &a.expand() + &b.expand(),
            PolyExpr::Sub(a, b) => &a.expand() - &b.expand(),
            PolyExpr::Mul(a, b) => &a.expand() * &b.expand(),
            PolyExpr::Pow(a, n) => a.expand().pow(*n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Decimal(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Decimal(s) | Tok::Ident(s) => f.write_str(s),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Caret => f.write_str("^"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
        }
    }
}

fn err<T>(kind: ParseErrorKind, position: usize) -> Result<T, ParseError> {
    Err(ParseError { kind, position })
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    out.push((Tok::Decimal(s), start));
                } else {
                    let s: String = chars[start..i].iter().collect();
                    out.push((Tok::Int(s.parse().expect("digits")), start));
                }
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => return err(ParseErrorKind::InvalidCharacter(other), i),
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    variable: &'a str,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, o)| o)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Ident(_) | Tok::LParen) => {
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyExpr, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(PolyExpr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyExpr, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let exp = match self.bump() {
            Some((Tok::Int(n), _)) => n,
            Some((Tok::Minus, _)) => return err(ParseErrorKind::NegativeExponent, at),
            Some(_) => return err(ParseErrorKind::NonIntegerExponent, at),
            None => {
                return err(
                    ParseErrorKind::UnexpectedEnd {
                        expected: "an exponent",
                    },
                    at,
                )
            }
        };
        if exp > BigInt::from(MAX_EXPONENT) {
            return err(ParseErrorKind::ExponentTooLarge(exp.to_string()), at);
        }
        let n = u32::try_from(&exp).expect("bounded exponent");
        if self.peek() == Some(&Tok::Caret) {
            return err(
                ParseErrorKind::UnexpectedToken {
                    found: "^".into(),
                    expected: "an operator (parenthesize repeated powers)",
                },
                self.offset(),
            );
        }
        Ok(PolyExpr::Pow(Box::new(base), n))
    }

    fn primary(&mut self) -> Result<PolyExpr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some((Tok::Int(n), _)) => Ok(PolyExpr::Int(n)),
            Some((Tok::Decimal(s), _)) => err(ParseErrorKind::NonIntegerLiteral(s), at),
            Some((Tok::Ident(name), _)) => {
                if name.eq_ignore_ascii_case(self.variable) {
                    Ok(PolyExpr::Var)
                } else {
                    err(ParseErrorKind::UnknownIdentifier(name), at)
                }
            }
            Some((Tok::LParen, _)) => {
                self.depth += 1;
                let inner = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => {
                        self.depth -= 1;
                        Ok(inner)
                    }
                    None => err(ParseErrorKind::UnbalancedParenthesis, at),
                    Some((t, o)) => err(
                        ParseErrorKind::UnexpectedToken {
                            found: t.to_string(),
                            expected: "')'",
                        },
                        o,
                    ),
                }
            }
            Some((Tok::RParen, _)) if self.depth == 0 => {
                err(ParseErrorKind::UnbalancedParenthesis, at)
            }
            Some((t, _)) => err(
                ParseErrorKind::UnexpectedToken {
                    found: t.to_string(),
                    expected: "a number, the variable or '('",
                },
                at,
            ),
            None => err(
                ParseErrorKind::UnexpectedEnd {
                    expected: "a number, the variable or '('",
                },
                at,
            ),
        }
    }
}

/// Parses `text` in the variable `variable` without expanding it.
pub fn parse_expr_in(text: &str, variable: &str) -> Result<PolyExpr, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return err(ParseErrorKind::EmptyInput, 0);
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        variable,
        depth: 0,
    };
    let expr = parser.expr()?;
    if let Some((t, o)) = parser.bump() {
        let kind = match t {
            Tok::RParen => ParseErrorKind::UnbalancedParenthesis,
            Tok::Int(_) | Tok::Decimal(_) => ParseErrorKind::UnexpectedToken {
                found: t.to_string(),
                expected: "an operator (write '*' before a number)",
            },
            t => ParseErrorKind::UnexpectedToken {
                found: t.to_string(),
                expected: "an operator",
            },
        };
        return err(kind, o);
    }
    Ok(expr)
}

pub fn parse_expr(text: &str) -> Result<PolyExpr, ParseError> {
    parse_expr_in(text, "X")
}

/// Parses and expands `text` in the variable `variable`.
pub fn parse_in(text: &str, variable: &str) -> Result<Polynomial, ParseError> {
    let expr = parse_expr_in(text, variable)?;
    let degree = expr.degree_bound();
    if degree > MAX_DEGREE {
        return err(ParseErrorKind::DegreeTooLarge(degree), 0);
    }
    Ok(expr.expand())
}

/// Parses and expands an expression in `X`.
pub fn parse(text: &str) -> Result<Polynomial, ParseError> {
    parse_in(text, "X")
}

/// Descending-degree form, e.g. `X^2 - 2*X + 244`, in the variable `variable`.
pub fn print_in(poly: &Polynomial, variable: &str) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in poly.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let abs = c.abs();
        let var = match i {
            0 => {
                out.push_str(&abs.to_string());
                continue;
            }
            1 => variable.to_string(),
            _ => format!("{variable}^{i}"),
        };
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push('*');
        }
        out.push_str(&var);
    }
    out
}

pub fn print(poly: &Polynomial) -> String {
    print_in(poly, "X")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coeffs(text: &str) -> Vec<i64> {
        parse(text)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn kind(text: &str) -> (ParseErrorKind, usize) {
        let e = parse(text).unwrap_err();
        (e.kind, e.position)
    }

    #[test]
    fn examples() {
        assert_eq!(coeffs("(X^2+3)*(X^2+3*X+9)"), vec![27, 9, 12, 3, 1]);
        assert_eq!(coeffs("X"), vec![0, 1]);
        assert_eq!(coeffs("(X-1)^2 + 3^5"), vec![244, -2, 1]);
        assert_eq!(coeffs("(X^2+3)*(X^2+3X+9)"), vec![27, 9, 12, 3, 1]);
    }

    #[test]
    fn precedence() {
        assert_eq!(coeffs("-X^2"), vec![0, 0, -1]);
        assert_eq!(coeffs("-2^2"), vec![-4]);
        assert_eq!(coeffs("(-2)^2"), vec![4]);
        assert_eq!(coeffs("1 - 2 - 3"), vec![-4]);
        assert_eq!(coeffs("2*3^2"), vec![18]);
        assert_eq!(coeffs("2*-X"), vec![0, -2]);
        assert_eq!(coeffs("(X+1)(X+2)"), vec![2, 3, 1]);
        assert_eq!(coeffs("3x^2"), vec![0, 0, 3]);
        assert_eq!(coeffs("X \u{2212} 1"), vec![-1, 1]);
        assert_eq!(coeffs("X^0"), vec![1]);
        assert_eq!(coeffs("X - X"), Vec::<i64>::new());
    }

    #[test]
    fn other_variable() {
        let p = parse_in("t^2 + T", "T").unwrap();
        assert_eq!(p, Polynomial::from_coeffs(&[0, 1, 1]));
        assert_eq!(print_in(&p, "T"), "T^2 + T");
    }

    #[test]
    fn errors() {
        assert_eq!(kind(""), (ParseErrorKind::EmptyInput, 0));
        assert_eq!(
            kind("X + Y"),
            (ParseErrorKind::UnknownIdentifier("Y".into()), 4)
        );
        assert_eq!(kind("(X + 1"), (ParseErrorKind::UnbalancedParenthesis, 0));
        assert_eq!(kind("X + 1)"), (ParseErrorKind::UnbalancedParenthesis, 5));
        assert_eq!(kind("X^-1"), (ParseErrorKind::NegativeExponent, 2));
        assert_eq!(kind("X^1.5"), (ParseErrorKind::NonIntegerExponent, 2));
        assert_eq!(kind("X^X"), (ParseErrorKind::NonIntegerExponent, 2));
        assert_eq!(
            kind("X^10001"),
            (ParseErrorKind::ExponentTooLarge("10001".into()), 2)
        );
        assert_eq!(kind("X ? 1"), (ParseErrorKind::InvalidCharacter('?'), 2));
        assert_eq!(
            kind("1.5*X"),
            (ParseErrorKind::NonIntegerLiteral("1.5".into()), 0)
        );
        assert!(matches!(
            kind("X +").0,
            ParseErrorKind::UnexpectedEnd { .. }
        ));
        assert!(matches!(
            kind("X 2").0,
            ParseErrorKind::UnexpectedToken { .. }
        ));
        assert!(matches!(
            kind("X^2^3").0,
            ParseErrorKind::UnexpectedToken { .. }
        ));
        assert_eq!(
            kind("(X^10000)^10000"),
            (ParseErrorKind::DegreeTooLarge(100_000_000), 0)
        );
        let e = parse("X + Y").unwrap_err();
        assert_eq!(e.to_string(), "unknown identifier 'Y' at position 4");
    }

    #[test]
    fn printing() {
        assert_eq!(print(&Polynomial::from_coeffs(&[0, 1])), "X");
        assert_eq!(print(&Polynomial::zero()), "0");
        assert_eq!(
            print(&Polynomial::from_coeffs(&[244, -2, 1])),
            "X^2 - 2*X + 244"
        );
        assert_eq!(
            print(&Polynomial::from_coeffs(&[27, 9, 12, 3, 1])),
            "X^4 + 3*X^3 + 12*X^2 + 9*X + 27"
        );
        assert_eq!(print(&Polynomial::from_coeffs(&[-5, 0, -1])), "-X^2 - 5");
        assert_eq!(print(&Polynomial::from_coeffs(&[0, -3])), "-3*X");
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-1_000_000i64..=1_000_000, 0..=11)
            .prop_map(|c| Polynomial::from_coeffs(&c))
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (-20i64..20).prop_map(|n| n.to_string()),
            Just("X".to_string()),
            Just("x".to_string()),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})-({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})({b})")),
                inner.clone().prop_map(|a| format!("-({a})")),
                (inner, 0u32..4).prop_map(|(a, n)| format!("({a})^{n}")),
            ]
        })
    }

    proptest! {
        #[test]
        fn round_trip(p in arb_poly()) {
            prop_assert_eq!(parse(&print(&p)).unwrap(), p);
        }

        #[test]
        fn evaluation_agreement(text in arb_expr(), x in -100i64..=100) {
            let expr = parse_expr(&text).unwrap();
            let poly = expr.expand();
            let x = BigInt::from(x);
            prop_assert_eq!(expr.eval(&x), poly.evaluate(&x, None));
        }
    }
}
