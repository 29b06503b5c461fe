//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom ("^" NAT)?
//! atom   := NUMBER | "i" | "kappa" | "s" | "r2" | GEN | "(" expr ")"
//! GEN    := ("phi" | "pi" | "ap" | "am") "(" NAT ")" | "I" | "K" | "Kinv" | "one"
//! ```
//!
//! Division is by scalar factors only; together with unary minus this makes
//! the printed form of every expression parseable.

use std::fmt;

use ccr_hopf::algebra::{Expr, Generator, Presentation};
use ccr_hopf::Scalar;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("at offset {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("at offset {position}: {message}")]
    Invalid { position: usize, message: String },
    #[error("generator {generator} is not part of the {variant} presentation")]
    UnknownGenerator { generator: String, variant: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) | Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            out.push((pos, Tok::Num(chars[start..i].iter().map(|c| c.1).collect())));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(ParseError::Invalid {
                position: pos,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// Exact value of a decimal literal such as `12`, `0.25` or `3.`.
fn decimal(text: &str, position: usize) -> Result<Scalar, ParseError> {
    let invalid = || ParseError::Invalid {
        position,
        message: format!("malformed number `{text}`"),
    };
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') || int.len() + frac.len() > 18 {
        return Err(invalid());
    }
    let digits = format!("{int}{frac}");
    let n: i64 = digits.parse().map_err(|_| invalid())?;
    Ok(Scalar::from_ratio(n, 10i64.pow(frac.len() as u32)))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) if s.chars().all(|c| c.is_ascii_digit()) => {
                self.bump();
                s.parse().map_err(|_| ParseError::Invalid {
                    position: pos,
                    message: format!("integer `{s}` out of range"),
                })
            }
            _ => self.fail(&["a natural number"]),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.bump();
                let rhs = self.factor()?;
                let inv = rhs.as_scalar().and_then(|s| s.inv()).ok_or(ParseError::Invalid {
                    position: pos,
                    message: "division is only by nonzero scalars".into(),
                })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let n = self.nat()?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                Ok(Expr::scalar(decimal(&s, pos)?))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                let mode = |p: &mut Parser, f: fn(u32) -> Generator| -> Result<Expr, ParseError> {
                    p.expect('(')?;
                    let j = p.nat()?;
                    p.expect(')')?;
                    Ok(Expr::gen(f(j)))
                };
                match name.as_str() {
                    "i" => Ok(Expr::scalar(Scalar::i())),
                    "kappa" => Ok(Expr::scalar(Scalar::kappa())),
                    "s" => Ok(Expr::scalar(Scalar::s())),
                    "r2" => Ok(Expr::scalar(Scalar::r2())),
                    "one" => Ok(Expr::one()),
                    "I" => Ok(Expr::gen(Generator::I)),
                    "K" => Ok(Expr::gen(Generator::K)),
                    "Kinv" => Ok(Expr::gen(Generator::Kinv)),
                    "phi" => mode(self, Generator::Phi),
                    "pi" => mode(self, Generator::Pi),
                    "ap" => mode(self, Generator::APlus),
                    "am" => mode(self, Generator::AMinus),
                    _ => Err(ParseError::Invalid {
                        position: pos,
                        message: format!("unknown symbol `{name}`"),
                    }),
                }
            }
            _ => self.fail(&["a number", "a symbol", "a generator", "`(`", "`-`"]),
        }
    }
}

/// Parses `text` with no presentation constraints.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["an operator", "end of input"]);
    }
    Ok(e)
}

/// Parses `text` and rejects generators that `p` does not have.
pub fn parse_expr_for(text: &str, p: &Presentation) -> Result<Expr, ParseError> {
    let e = parse_expr(text)?;
    if let Some(g) = e.generators().into_iter().find(|&g| !p.is_legal(g)) {
        return Err(ParseError::UnknownGenerator {
            generator: g.to_string(),
            variant: format!("{:?}", p.variant()),
        });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccr_hopf::algebra::{Word, Generator::*};
    use proptest::prelude::*;

    #[test]
    fn two_degree_two_words() {
        let e = parse_expr("pi(0)*phi(0) - phi(0)*pi(0)").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coefficient(&Word(vec![Pi(0), Phi(0)])), Scalar::one());
        assert_eq!(e.coefficient(&Word(vec![Phi(0), Pi(0)])), -Scalar::one());
    }

    #[test]
    fn scalar_symbols() {
        let e = parse_expr("i*kappa*I").unwrap();
        assert_eq!(e, Expr::gen(I).scale(&(&Scalar::i() * &Scalar::kappa())));
    }

    #[test]
    fn powers() {
        assert_eq!(parse_expr("ap(1)^2").unwrap(), Expr::product(&[APlus(1), APlus(1)]));
        assert_eq!(parse_expr("-phi(0)^2").unwrap(), -&Expr::product(&[Phi(0), Phi(0)]));
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_expr("0.25*I").unwrap(), Expr::gen(I).scale(&Scalar::from_ratio(1, 4)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("phi(0) * ").unwrap_err() {
            ParseError::Syntax { position, .. } => assert_eq!(position, 9),
            e => panic!("{e:?}"),
        }
        match parse_expr("phi(x)").unwrap_err() {
            ParseError::Syntax { position, expected, .. } => {
                assert_eq!(position, 4);
                assert_eq!(expected, vec!["a natural number"]);
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_expr("phi(0)/pi(0)"), Err(ParseError::Invalid { position: 6, .. })));
        assert!(matches!(parse_expr("foo"), Err(ParseError::Invalid { .. })));
    }

    #[test]
    fn k_rejected_for_undeformed() {
        let p = Presentation::undeformed();
        assert!(matches!(parse_expr_for("K*phi(0)", &p), Err(ParseError::UnknownGenerator { .. })));
        assert!(parse_expr_for("K*phi(0)", &Presentation::strict()).is_ok());
    }

    fn generator() -> impl Strategy<Value = Generator> {
        prop_oneof![
            Just(I),
            Just(K),
            Just(Kinv),
            (0u32..3).prop_map(Phi),
            (0u32..3).prop_map(Pi),
            (0u32..3).prop_map(APlus),
            (0u32..3).prop_map(AMinus),
        ]
    }

    fn scalar() -> impl Strategy<Value = Scalar> {
        (-9i64..9, 1i64..6, -9i64..9, 0i32..3, -2i32..3, 0i32..2).prop_map(|(a, b, c, kp, sp, r)| {
            let re = Scalar::from_ratio(a, b);
            let im = &Scalar::i() * &Scalar::from_ratio(c, b + 1);
            let mut x = &re + &im;
            x = &x * &Scalar::kappa().pow(kp);
            x = &x * &Scalar::s().pow(sp);
            if r == 1 {
                x = &x * &(&Scalar::one() + &Scalar::r2()).inv().unwrap();
            }
            x
        })
    }

    fn expr() -> impl Strategy<Value = Expr> {
        prop::collection::vec((prop::collection::vec(generator(), 0..4), scalar()), 0..5)
            .prop_map(|ts| Expr::from_terms(ts.into_iter().map(|(w, c)| (Word(w), c))))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in expr()) {
            let printed = e.to_string();
            let back = parse_expr(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
            prop_assert_eq!(back, e);
        }
    }
}
