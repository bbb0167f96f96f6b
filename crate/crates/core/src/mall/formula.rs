//! MALL formulas: an ASCII grammar, a minimal-parenthesis printer and the
//! De Morgan dual.
//!
//! ```text
//! formula  := additive ("-o" formula)?
//! additive := mult (("&" | "+") mult)*
//! mult     := unary (("*" | "#") unary)*
//! unary    := "~" unary | atom | "1" | "0" | "bot" | "top" | "(" formula ")"
//! ```

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    Lollipop(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    One,
    Bot,
    Top,
    Zero,
}

use Formula::*;

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Formula {
        Neg(Box::new(f))
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Par(Box::new(a), Box::new(b))
    }

    pub fn lollipop(a: Formula, b: Formula) -> Formula {
        Lollipop(Box::new(a), Box::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Formula {
        With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Formula {
        Plus(Box::new(a), Box::new(b))
    }

    /// Binding strength: higher binds tighter.
    fn level(&self) -> u8 {
        match self {
            Lollipop(..) => 0,
            With(..) | Plus(..) => 1,
            Tensor(..) | Par(..) => 2,
            Neg(_) => 3,
            Atom(_) | One | Bot | Top | Zero => 4,
        }
    }

    /// The linear negation, pushed to the atoms.
    pub fn dual(&self) -> Formula {
        match self {
            Atom(_) => Formula::neg(self.clone()),
            Neg(a) => a.nnf(),
            Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Par(a, b) => Formula::tensor(a.dual(), b.dual()),
            Lollipop(a, b) => Formula::tensor(a.nnf(), b.dual()),
            With(a, b) => Formula::plus(a.dual(), b.dual()),
            Plus(a, b) => Formula::with(a.dual(), b.dual()),
            One => Bot,
            Bot => One,
            Top => Zero,
            Zero => Top,
        }
    }

    /// Negation normal form: negations on atoms only, lollipops unfolded.
    pub fn nnf(&self) -> Formula {
        match self {
            Atom(_) | One | Bot | Top | Zero => self.clone(),
            Neg(a) => a.dual(),
            Tensor(a, b) => Formula::tensor(a.nnf(), b.nnf()),
            Par(a, b) => Formula::par(a.nnf(), b.nnf()),
            Lollipop(a, b) => Formula::par(a.dual(), b.nnf()),
            With(a, b) => Formula::with(a.nnf(), b.nnf()),
            Plus(a, b) => Formula::plus(a.nnf(), b.nnf()),
        }
    }

    /// Removes every double negation `~~a`.
    pub fn simplify_negations(&self) -> Formula {
        match self {
            Neg(a) => match &**a {
                Neg(b) => b.simplify_negations(),
                _ => Formula::neg(a.simplify_negations()),
            },
            Tensor(a, b) => Formula::tensor(a.simplify_negations(), b.simplify_negations()),
            Par(a, b) => Formula::par(a.simplify_negations(), b.simplify_negations()),
            Lollipop(a, b) => Formula::lollipop(a.simplify_negations(), b.simplify_negations()),
            With(a, b) => Formula::with(a.simplify_negations(), b.simplify_negations()),
            Plus(a, b) => Formula::plus(a.simplify_negations(), b.simplify_negations()),
            _ => self.clone(),
        }
    }

    /// Equal up to De Morgan laws and the unfolding of `-o`.
    pub fn equivalent(&self, other: &Formula) -> bool {
        self.nnf() == other.nnf()
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        fn go(f: &Formula, out: &mut Vec<String>) {
            match f {
                Atom(a) => {
                    if !out.contains(a) {
                        out.push(a.clone());
                    }
                }
                Neg(a) => go(a, out),
                Tensor(a, b) | Par(a, b) | Lollipop(a, b) | With(a, b) | Plus(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                One | Bot | Top | Zero => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, x: &Formula, parens: bool| {
            if parens {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        };
        let binary = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, lvl: u8, right_assoc: bool| {
            if right_assoc {
                wrap(f, a, a.level() <= lvl)?;
                write!(f, " {op} ")?;
                wrap(f, b, b.level() < lvl)
            } else {
                wrap(f, a, a.level() < lvl)?;
                write!(f, " {op} ")?;
                wrap(f, b, b.level() <= lvl)
            }
        };
        match self {
            Atom(a) => f.write_str(a),
            One => f.write_str("1"),
            Zero => f.write_str("0"),
            Bot => f.write_str("bot"),
            Top => f.write_str("top"),
            Neg(a) => {
                f.write_str("~")?;
                wrap(f, a, a.level() < 3)
            }
            Tensor(a, b) => binary(f, a, "*", b, 2, false),
            Par(a, b) => binary(f, a, "#", b, 2, false),
            With(a, b) => binary(f, a, "&", b, 1, false),
            Plus(a, b) => binary(f, a, "+", b, 1, false),
            Lollipop(a, b) => binary(f, a, "-o", b, 0, true),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Zero,
    Tilde,
    Star,
    Hash,
    Amp,
    PlusSign,
    Lolli,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::One => f.write_str("`1`"),
            Tok::Zero => f.write_str("`0`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Hash => f.write_str("`#`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::PlusSign => f.write_str("`+`"),
            Tok::Lolli => f.write_str("`-o`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// A token with its 1-based line and column.
#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let mut push = |tok: Tok, width: usize, i: &mut usize, column: &mut usize| {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            *i += width;
            *column += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            '~' => push(Tok::Tilde, 1, &mut i, &mut column),
            '*' => push(Tok::Star, 1, &mut i, &mut column),
            '#' => push(Tok::Hash, 1, &mut i, &mut column),
            '&' => push(Tok::Amp, 1, &mut i, &mut column),
            '+' => push(Tok::PlusSign, 1, &mut i, &mut column),
            '(' => push(Tok::LParen, 1, &mut i, &mut column),
            ')' => push(Tok::RParen, 1, &mut i, &mut column),
            '1' => push(Tok::One, 1, &mut i, &mut column),
            '0' => push(Tok::Zero, 1, &mut i, &mut column),
            '-' if chars.get(i + 1) == Some(&'o') => push(Tok::Lolli, 2, &mut i, &mut column),
            c if c.is_ascii_lowercase() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                push(Tok::Ident(word), j - start, &mut i, &mut column);
            }
            other => return Err(syntax(line, column, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.additive()?;
        if self.peek().tok == Tok::Lolli {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::lollipop(lhs, rhs));
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> Result<Formula> {
        let mut lhs = self.mult()?;
        loop {
            let ctor: fn(Formula, Formula) -> Formula = match self.peek().tok {
                Tok::Amp => Formula::with,
                Tok::PlusSign => Formula::plus,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = ctor(lhs, self.mult()?);
        }
    }

    fn mult(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        loop {
            let ctor: fn(Formula, Formula) -> Formula = match self.peek().tok {
                Tok::Star => Formula::tensor,
                Tok::Hash => Formula::par,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = ctor(lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        let t = self.bump();
        match t.tok {
            Tok::Tilde => Ok(Formula::neg(self.unary()?)),
            Tok::One => Ok(One),
            Tok::Zero => Ok(Zero),
            Tok::Ident(w) if w == "bot" => Ok(Bot),
            Tok::Ident(w) if w == "top" => Ok(Top),
            Tok::Ident(w) => Ok(Atom(w)),
            Tok::LParen => {
                let f = self.formula()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(syntax(close.line, close.column, format!("expected `)`, found {}", close.tok)));
                }
                Ok(f)
            }
            other => Err(syntax(t.line, t.column, format!("expected a formula, found {other}"))),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    let rest = p.peek();
    if rest.tok != Tok::End {
        return Err(syntax(rest.line, rest.column, format!("unexpected {}", rest.tok)));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }

    fn b() -> Formula {
        Formula::atom("b")
    }

    #[test]
    fn grammar_cases() {
        assert_eq!(parse_formula("a * ~a").unwrap(), Formula::tensor(a(), Formula::neg(a())));
        assert_eq!(parse_formula("(a # b) & 1").unwrap(), Formula::with(Formula::par(a(), b()), One));
    }

    #[test]
    fn precedence_and_associativity() {
        let c = Formula::atom("c");
        assert_eq!(
            parse_formula("a * b # c").unwrap(),
            Formula::par(Formula::tensor(a(), b()), c.clone())
        );
        assert_eq!(
            parse_formula("a -o b -o c").unwrap(),
            Formula::lollipop(a(), Formula::lollipop(b(), c.clone()))
        );
        assert_eq!(
            parse_formula("a & b * c").unwrap(),
            Formula::with(a(), Formula::tensor(b(), c.clone()))
        );
        assert_eq!(parse_formula("~a * b").unwrap(), Formula::tensor(Formula::neg(a()), b()));
        assert_eq!(parse_formula("a + b + c").unwrap(), Formula::plus(Formula::plus(a(), b()), c));
    }

    #[test]
    fn printer_uses_minimal_parentheses() {
        for (text, printed) in [
            ("(a * b) * c", "a * b * c"),
            ("a * (b * c)", "a * (b * c)"),
            ("(a -o b) -o c", "(a -o b) -o c"),
            ("a -o (b -o c)", "a -o b -o c"),
            ("~(a * b)", "~(a * b)"),
            ("~~a", "~~a"),
            ("(a & b) * top", "(a & b) * top"),
        ] {
            assert_eq!(parse_formula(text).unwrap().to_string(), printed);
        }
    }

    #[test]
    fn units_and_keywords() {
        assert_eq!(parse_formula("1 * bot + top & 0").unwrap().to_string(), "1 * bot + top & 0");
        assert_eq!(parse_formula("bottom").unwrap(), Formula::atom("bottom"));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("a *\n  (b # )") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_formula("A"), Err(Error::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(parse_formula("a b"), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse_formula(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn dual_is_an_involution_on_normal_forms() {
        let f = parse_formula("(a -o b) & ~(1 + c)").unwrap();
        assert_eq!(f.dual().dual(), f.nnf());
        assert_eq!(f.nnf().to_string(), "~a # b & (bot & ~c)");
    }

    #[test]
    fn double_negations_simplify() {
        let f = parse_formula("~~a * ~~~b").unwrap();
        assert_eq!(f.simplify_negations().to_string(), "a * ~b");
        assert!(f.equivalent(&parse_formula("a * ~b").unwrap()));
    }
}
