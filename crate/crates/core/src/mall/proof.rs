//! One-sided MALL sequent proofs written as s-expressions.
//!
//! ```text
//! (ax F)                ⊢ ~F, F
//! (cut P Q on F)        P ⊢ Γ, F   Q ⊢ ~F, Δ        ⊢ Γ, Δ
//! (tensor P Q)          P ⊢ Γ, A   Q ⊢ Δ, B         ⊢ Γ, Δ, A * B
//! (par P)               P ⊢ Γ, A, B                 ⊢ Γ, A # B
//! (lolli P)             P ⊢ Γ, ~A, B                ⊢ Γ, A -o B
//! (with P Q)            P ⊢ Γ, A   Q ⊢ Γ, B         ⊢ Γ, A & B
//! (plus1 P F)           P ⊢ Γ, A                    ⊢ Γ, A + F
//! (plus2 F P)           P ⊢ Γ, B                    ⊢ Γ, F + B
//! (ex P i₁ … iₙ)        P ⊢ A₁ … Aₙ                 ⊢ A_{i₁} … A_{iₙ}
//! (one)                                             ⊢ 1
//! (bot P)               P ⊢ Γ                       ⊢ Γ, bot
//! (top F …)                                         ⊢ F …, top
//! ```
//!
//! Formulas are bare symbols such as `a` or `~a`, or quoted strings. Side
//! formulas are matched up to De Morgan equivalence.

use std::fmt;

use super::formula::{parse_formula, Formula};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proof {
    Ax(Formula),
    Cut(Box<Proof>, Box<Proof>, Formula),
    Tensor(Box<Proof>, Box<Proof>),
    Par(Box<Proof>),
    Lolli(Box<Proof>),
    With(Box<Proof>, Box<Proof>),
    Plus1(Box<Proof>, Formula),
    Plus2(Formula, Box<Proof>),
    /// Indices are 1-based positions in the premise.
    Ex(Box<Proof>, Vec<usize>),
    One,
    Bot(Box<Proof>),
    Top(Vec<Formula>),
}

pub type Sequent = Vec<Formula>;

fn ill(msg: impl Into<String>) -> Error {
    Error::IllFormedProof(msg.into())
}

fn render(gamma: &[Formula]) -> String {
    let parts: Vec<String> = gamma.iter().map(ToString::to_string).collect();
    format!("⊢ {}", parts.join(", "))
}

/// Splits off the last formula of a premise.
fn split_last(gamma: Sequent, rule: &str) -> Result<(Sequent, Formula)> {
    let mut gamma = gamma;
    let last = gamma
        .pop()
        .ok_or_else(|| ill(format!("{rule}: premise has an empty sequent")))?;
    Ok((gamma, last))
}

impl Proof {
    /// The end sequent, checking every inference on the way.
    pub fn conclusion(&self) -> Result<Sequent> {
        match self {
            Proof::Ax(f) => Ok(vec![Formula::neg(f.clone()), f.clone()]),
            Proof::Cut(p, q, f) => {
                let (mut gamma, a) = split_last(p.conclusion()?, "cut")?;
                if !a.equivalent(f) {
                    return Err(ill(format!("cut on {f}: left premise ends with {a}")));
                }
                let delta = q.conclusion()?;
                match delta.first() {
                    Some(b) if b.equivalent(&f.dual()) => {}
                    _ => {
                        return Err(ill(format!(
                            "cut on {f}: right premise {} does not start with ~({f})",
                            render(&delta)
                        )))
                    }
                }
                gamma.extend(delta.into_iter().skip(1));
                Ok(gamma)
            }
            Proof::Tensor(p, q) => {
                let (mut gamma, a) = split_last(p.conclusion()?, "tensor")?;
                let (delta, b) = split_last(q.conclusion()?, "tensor")?;
                gamma.extend(delta);
                gamma.push(Formula::tensor(a, b));
                Ok(gamma)
            }
            Proof::Par(p) => {
                let (gamma, b) = split_last(p.conclusion()?, "par")?;
                let (mut gamma, a) = split_last(gamma, "par")?;
                gamma.push(Formula::par(a, b));
                Ok(gamma)
            }
            Proof::Lolli(p) => {
                let (gamma, b) = split_last(p.conclusion()?, "lolli")?;
                let (mut gamma, na) = split_last(gamma, "lolli")?;
                let a = match na {
                    Formula::Neg(a) => *a,
                    other => other.dual(),
                };
                gamma.push(Formula::lollipop(a, b));
                Ok(gamma)
            }
            Proof::With(p, q) => {
                let (mut gamma, a) = split_last(p.conclusion()?, "with")?;
                let (delta, b) = split_last(q.conclusion()?, "with")?;
                let same = gamma.len() == delta.len() && gamma.iter().zip(&delta).all(|(x, y)| x.equivalent(y));
                if !same {
                    return Err(ill(format!(
                        "with: contexts differ ({} and {})",
                        render(&gamma),
                        render(&delta)
                    )));
                }
                gamma.push(Formula::with(a, b));
                Ok(gamma)
            }
            Proof::Plus1(p, f) => {
                let (mut gamma, a) = split_last(p.conclusion()?, "plus1")?;
                gamma.push(Formula::plus(a, f.clone()));
                Ok(gamma)
            }
            Proof::Plus2(f, p) => {
                let (mut gamma, b) = split_last(p.conclusion()?, "plus2")?;
                gamma.push(Formula::plus(f.clone(), b));
                Ok(gamma)
            }
            Proof::Ex(p, idx) => {
                let gamma = p.conclusion()?;
                let mut seen = vec![false; gamma.len()];
                if idx.len() != gamma.len() {
                    return Err(ill(format!("ex: {} indices for {} formulas", idx.len(), gamma.len())));
                }
                for &i in idx {
                    if i == 0 || i > gamma.len() || seen[i - 1] {
                        return Err(ill(format!("ex: indices {idx:?} are not a permutation")));
                    }
                    seen[i - 1] = true;
                }
                Ok(idx.iter().map(|&i| gamma[i - 1].clone()).collect())
            }
            Proof::One => Ok(vec![Formula::One]),
            Proof::Bot(p) => {
                let mut gamma = p.conclusion()?;
                gamma.push(Formula::Bot);
                Ok(gamma)
            }
            Proof::Top(fs) => {
                let mut gamma = fs.clone();
                gamma.push(Formula::Top);
                Ok(gamma)
            }
        }
    }

    pub fn contains_cut(&self) -> bool {
        match self {
            Proof::Cut(..) => true,
            Proof::Tensor(p, q) | Proof::With(p, q) => p.contains_cut() || q.contains_cut(),
            Proof::Par(p) | Proof::Lolli(p) | Proof::Plus1(p, _) | Proof::Plus2(_, p) | Proof::Ex(p, _) | Proof::Bot(p) => {
                p.contains_cut()
            }
            Proof::Ax(_) | Proof::One | Proof::Top(_) => false,
        }
    }

    /// Every formula written in the proof, for atom lookup.
    pub fn formulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Formula>) {
        match self {
            Proof::Ax(f) => out.push(f.clone()),
            Proof::Cut(p, q, f) => {
                p.collect(out);
                q.collect(out);
                out.push(f.clone());
            }
            Proof::Tensor(p, q) | Proof::With(p, q) => {
                p.collect(out);
                q.collect(out);
            }
            Proof::Par(p) | Proof::Lolli(p) | Proof::Ex(p, _) | Proof::Bot(p) => p.collect(out),
            Proof::Plus1(p, f) | Proof::Plus2(f, p) => {
                p.collect(out);
                out.push(f.clone());
            }
            Proof::One => {}
            Proof::Top(fs) => out.extend(fs.iter().cloned()),
        }
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, x: &Formula) -> fmt::Result {
    let s = x.to_string();
    if s.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
        write!(f, "\"{s}\"")
    } else {
        f.write_str(&s)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proof::Ax(x) => {
                f.write_str("(ax ")?;
                write_formula(f, x)?;
                f.write_str(")")
            }
            Proof::Cut(p, q, x) => {
                write!(f, "(cut {p} {q} on ")?;
                write_formula(f, x)?;
                f.write_str(")")
            }
            Proof::Tensor(p, q) => write!(f, "(tensor {p} {q})"),
            Proof::Par(p) => write!(f, "(par {p})"),
            Proof::Lolli(p) => write!(f, "(lolli {p})"),
            Proof::With(p, q) => write!(f, "(with {p} {q})"),
            Proof::Plus1(p, x) => {
                write!(f, "(plus1 {p} ")?;
                write_formula(f, x)?;
                f.write_str(")")
            }
            Proof::Plus2(x, p) => {
                f.write_str("(plus2 ")?;
                write_formula(f, x)?;
                write!(f, " {p})")
            }
            Proof::Ex(p, idx) => {
                write!(f, "(ex {p}")?;
                for i in idx {
                    write!(f, " {i}")?;
                }
                f.write_str(")")
            }
            Proof::One => f.write_str("(one)"),
            Proof::Bot(p) => write!(f, "(bot {p})"),
            Proof::Top(fs) => {
                f.write_str("(top")?;
                for x in fs {
                    f.write_str(" ")?;
                    write_formula(f, x)?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Sexp {
    Symbol { text: String, line: usize, column: usize },
    Quoted { text: String, line: usize, column: usize },
    List { items: Vec<Sexp>, line: usize, column: usize },
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Symbol { line, column, .. } | Sexp::Quoted { line, column, .. } | Sexp::List { line, column, .. } => {
                (*line, *column)
            }
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct Reader {
    chars: Vec<char>,
    i: usize,
    line: usize,
    column: usize,
}

impl Reader {
    fn advance(&mut self) -> Option<char> {
        let c = *self.chars.get(self.i)?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.get(self.i) {
            if c == ';' {
                while self.chars.get(self.i).is_some_and(|&c| c != '\n') {
                    self.advance();
                }
            } else if c.is_whitespace() {
                self.advance();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp> {
        self.skip_blank();
        let (line, column) = (self.line, self.column);
        match self.chars.get(self.i).copied() {
            None => Err(syntax(line, column, "unexpected end of input")),
            Some(')') => Err(syntax(line, column, "unexpected `)`")),
            Some('(') => {
                self.advance();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.get(self.i) {
                        None => return Err(syntax(line, column, "unclosed `(`")),
                        Some(')') => {
                            self.advance();
                            return Ok(Sexp::List { items, line, column });
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some('"') => {
                self.advance();
                let mut text = String::new();
                loop {
                    match self.advance() {
                        None => return Err(syntax(line, column, "unterminated string")),
                        Some('"') => return Ok(Sexp::Quoted { text, line, column }),
                        Some(c) => text.push(c),
                    }
                }
            }
            Some(_) => {
                let mut text = String::new();
                while let Some(&c) = self.chars.get(self.i) {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' || c == ';' {
                        break;
                    }
                    text.push(c);
                    self.advance();
                }
                Ok(Sexp::Symbol { text, line, column })
            }
        }
    }
}

/// Re-anchors a syntax error inside an embedded formula at its position in the file.
fn formula_at(text: &str, line: usize, column: usize) -> Result<Formula> {
    parse_formula(text).map_err(|e| match e {
        Error::Syntax {
            line: l,
            column: c,
            message,
        } => {
            if l == 1 {
                syntax(line, column + c - 1, message)
            } else {
                syntax(line + l - 1, c, message)
            }
        }
        other => other,
    })
}

fn formula_of(s: &Sexp) -> Result<Formula> {
    match s {
        Sexp::Symbol { text, line, column } => formula_at(text, *line, *column),
        Sexp::Quoted { text, line, column } => formula_at(text, *line, *column + 1),
        Sexp::List { line, column, .. } => Err(syntax(*line, *column, "expected a formula, found a list")),
    }
}

fn proof_of(s: &Sexp) -> Result<Proof> {
    let (line, column) = s.pos();
    let Sexp::List { items, .. } = s else {
        return Err(syntax(line, column, "expected a proof `( … )`"));
    };
    let Some(Sexp::Symbol { text: rule, .. }) = items.first() else {
        return Err(syntax(line, column, "expected a rule name"));
    };
    let args = &items[1..];
    let arity = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(syntax(line, column, format!("`{rule}` takes {n} argument(s), found {}", args.len())))
        }
    };
    let sub = |i: usize| -> Result<Box<Proof>> { Ok(Box::new(proof_of(&args[i])?)) };
    Ok(match rule.as_str() {
        "ax" => {
            arity(1)?;
            Proof::Ax(formula_of(&args[0])?)
        }
        "cut" => {
            arity(4)?;
            match &args[2] {
                Sexp::Symbol { text, .. } if text == "on" => {}
                other => {
                    let (l, c) = other.pos();
                    return Err(syntax(l, c, "expected `on`"));
                }
            }
            Proof::Cut(sub(0)?, sub(1)?, formula_of(&args[3])?)
        }
        "tensor" => {
            arity(2)?;
            Proof::Tensor(sub(0)?, sub(1)?)
        }
        "par" => {
            arity(1)?;
            Proof::Par(sub(0)?)
        }
        "lolli" => {
            arity(1)?;
            Proof::Lolli(sub(0)?)
        }
        "with" => {
            arity(2)?;
            Proof::With(sub(0)?, sub(1)?)
        }
        "plus1" => {
            arity(2)?;
            Proof::Plus1(sub(0)?, formula_of(&args[1])?)
        }
        "plus2" => {
            arity(2)?;
            Proof::Plus2(formula_of(&args[0])?, sub(1)?)
        }
        "ex" => {
            if args.is_empty() {
                return Err(syntax(line, column, "`ex` needs a premise"));
            }
            let idx = args[1..]
                .iter()
                .map(|a| match a {
                    Sexp::Symbol { text, line, column } => text
                        .parse::<usize>()
                        .map_err(|_| syntax(*line, *column, format!("expected an index, found `{text}`"))),
                    other => {
                        let (l, c) = other.pos();
                        Err(syntax(l, c, "expected an index"))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Proof::Ex(sub(0)?, idx)
        }
        "one" => {
            arity(0)?;
            Proof::One
        }
        "bot" => {
            arity(1)?;
            Proof::Bot(sub(0)?)
        }
        "top" => Proof::Top(args.iter().map(formula_of).collect::<Result<_>>()?),
        other => return Err(syntax(line, column, format!("unknown rule `{other}`"))),
    })
}

pub fn parse_proof(text: &str) -> Result<Proof> {
    let mut r = Reader {
        chars: text.chars().collect(),
        i: 0,
        line: 1,
        column: 1,
    };
    let s = r.read()?;
    r.skip_blank();
    if r.i < r.chars.len() {
        return Err(syntax(r.line, r.column, "trailing input after the proof"));
    }
    proof_of(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(p: &str) -> String {
        render(&parse_proof(p).unwrap().conclusion().unwrap())
    }

    #[test]
    fn axiom_and_cut() {
        assert_eq!(seq("(ax a)"), "⊢ ~a, a");
        assert_eq!(seq("(cut (ax a) (ax a) on a)"), "⊢ ~a, a");
    }

    #[test]
    fn multiplicative_rules() {
        assert_eq!(seq("(tensor (ax a) (ax b))"), "⊢ ~a, ~b, a * b");
        assert_eq!(seq("(par (tensor (ax a) (ax b)))"), "⊢ ~a, ~b # (a * b)");
        assert_eq!(seq("(lolli (ax a))"), "⊢ a -o a");
        assert_eq!(seq("(ex (ax a) 2 1)"), "⊢ a, ~a");
    }

    #[test]
    fn additive_rules_and_units() {
        assert_eq!(seq("(with (ax a) (ax a))"), "⊢ ~a, a & a");
        assert_eq!(seq("(plus1 (ax a) b)"), "⊢ ~a, a + b");
        assert_eq!(seq("(plus2 \"b * c\" (ax a))"), "⊢ ~a, b * c + a");
        assert_eq!(seq("(one)"), "⊢ 1");
        assert_eq!(seq("(bot (one))"), "⊢ 1, bot");
        assert_eq!(seq("(top a ~b)"), "⊢ a, ~b, top");
    }

    #[test]
    fn ill_formed_inferences_are_rejected() {
        for bad in [
            "(cut (ax a) (ax b) on a)",
            "(cut (ax a) (ax a) on b)",
            "(with (ax a) (ax b))",
            "(ex (ax a) 1 1)",
            "(ex (ax a) 1)",
            "(par (one))",
        ] {
            let p = parse_proof(bad).unwrap();
            assert!(matches!(p.conclusion(), Err(Error::IllFormedProof(_))), "{bad}");
        }
    }

    #[test]
    fn cut_matches_up_to_de_morgan() {
        let p = parse_proof("(cut (tensor (ax a) (ax b)) (ex (par (ex (tensor (ax a) (ax b)) 3 1 2)) 2 1) on \"a * b\")");
        let p = p.unwrap();
        assert!(p.conclusion().is_ok(), "{:?}", p.conclusion());
    }

    #[test]
    fn syntax_errors_are_positioned() {
        assert!(matches!(parse_proof("(ax a"), Err(Error::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(parse_proof("(frob a)"), Err(Error::Syntax { .. })));
        match parse_proof("(ax\n  \"a * \")") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_proof("(one) (one)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "(cut (ax a) (ax a) on a)",
            "(plus2 \"b * c\" (ax a))",
            "(ex (tensor (ax a) (ax b)) 3 1 2 4)",
            "(top ~a \"a # b\")",
            "(bot (one))",
        ] {
            let p = parse_proof(text).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(parse_proof(&p.to_string()).unwrap(), p);
        }
    }
}
