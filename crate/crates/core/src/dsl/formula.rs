//! Formulas over `DI(L)`.
//!
//! ```text
//! formula  := join ( impl_op formula )?          right-associative
//! impl_op  := "->" | "-[" NAME "]->" | "<-[" NAME "]-"
//! join     := meet ( "\/" meet )*
//! meet     := tensor ( "/\" tensor )*
//! tensor   := unary ( ( "(x)" "[" NAME "]" | "[" NAME "]" "(x)" ) unary )*
//! unary    := "~" unary | "R" "(" formula ")" | atom
//! atom     := "dn" "(" NAME ")" | "{" ( NAME ( "," NAME )* )? "}"
//!           | "top" | "bot" | "(" formula ")" | NAME
//! ```
//!
//! A bare `NAME` refers to a named property set of the model. `{x, y}`
//! denotes the distributive ideal generated by the listed elements.

use std::fmt;

use crate::ideals::PropertySet;

use super::{is_name_char, Model, ModelError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Named(String),
    Down(String),
    Set(Vec<String>),
    Top,
    Bot,
    Neg(Box<Formula>),
    Resolution(Box<Formula>),
    Meet(Box<Formula>, Box<Formula>),
    Join(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    FwdImpl(String, Box<Formula>, Box<Formula>),
    BwdImpl(String, Box<Formula>, Box<Formula>),
    FwdTensor(String, Box<Formula>, Box<Formula>),
    BwdTensor(String, Box<Formula>, Box<Formula>),
}

/// Fully parenthesised rendering that parses back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Named(n) => write!(f, "{n}"),
            Formula::Down(x) => write!(f, "dn({x})"),
            Formula::Set(xs) => write!(f, "{{{}}}", xs.join(", ")),
            Formula::Top => write!(f, "top"),
            Formula::Bot => write!(f, "bot"),
            Formula::Neg(a) => write!(f, "~{a}"),
            Formula::Resolution(a) => write!(f, "R({a})"),
            Formula::Meet(a, b) => write!(f, "({a} /\\ {b})"),
            Formula::Join(a, b) => write!(f, "({a} \\/ {b})"),
            Formula::Impl(a, b) => write!(f, "({a} -> {b})"),
            Formula::FwdImpl(e, a, b) => write!(f, "({a} -[{e}]-> {b})"),
            Formula::BwdImpl(e, a, b) => write!(f, "({a} <-[{e}]- {b})"),
            Formula::FwdTensor(e, a, b) => write!(f, "({a} (x)[{e}] {b})"),
            Formula::BwdTensor(e, a, b) => write!(f, "({a} [{e}](x) {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Arrow,
    FwdOpen,
    FwdClose,
    BwdOpen,
    BwdClose,
    Join,
    Meet,
    Tensor,
    LBracket,
    RBracket,
    Tilde,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("`{n}`"),
            Tok::Arrow => "`->`".into(),
            Tok::FwdOpen => "`-[`".into(),
            Tok::FwdClose => "`]->`".into(),
            Tok::BwdOpen => "`<-[`".into(),
            Tok::BwdClose => "`]-`".into(),
            Tok::Join => "`\\/`".into(),
            Tok::Meet => "`/\\`".into(),
            Tok::Tensor => "`(x)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
        }
    }
}

const SYMBOLS: &[(&str, Tok)] = &[
    ("<-[", Tok::BwdOpen),
    ("]->", Tok::FwdClose),
    ("(x)", Tok::Tensor),
    ("->", Tok::Arrow),
    ("-[", Tok::FwdOpen),
    ("]-", Tok::BwdClose),
    ("\\/", Tok::Join),
    ("/\\", Tok::Meet),
    ("[", Tok::LBracket),
    ("]", Tok::RBracket),
    ("~", Tok::Tilde),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    ("{", Tok::LBrace),
    ("}", Tok::RBrace),
    (",", Tok::Comma),
];

/// Tokens with their 1-based columns.
fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ModelError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let col = col0 + i;
        for (sym, tok) in SYMBOLS {
            let n = sym.chars().count();
            if chars[i..].iter().take(n).copied().eq(sym.chars()) {
                out.push((tok.clone(), col));
                i += n;
                continue 'outer;
            }
        }
        if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), col));
            continue;
        }
        return Err(ModelError::Syntax {
            line,
            col,
            expected: "a formula token".into(),
            found: format!("`{c}`"),
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn error(&self, expected: &str) -> ModelError {
        let (col, found) = match self.toks.get(self.pos) {
            Some((t, c)) => (*c, t.describe()),
            None => (self.end_col, "end of input".into()),
        };
        ModelError::Syntax {
            line: self.line,
            col,
            expected: expected.into(),
            found,
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ModelError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ModelError> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error(what)),
        }
    }

    fn formula(&mut self) -> Result<Formula, ModelError> {
        let lhs = self.join()?;
        let op = match self.peek() {
            Some(Tok::Arrow) => {
                self.pos += 1;
                None
            }
            Some(Tok::FwdOpen) => {
                self.pos += 1;
                let e = self.name("an induction label")?;
                self.expect(Tok::FwdClose)?;
                Some((true, e))
            }
            Some(Tok::BwdOpen) => {
                self.pos += 1;
                let e = self.name("an induction label")?;
                self.expect(Tok::BwdClose)?;
                Some((false, e))
            }
            _ => return Ok(lhs),
        };
        let rhs = Box::new(self.formula()?);
        let lhs = Box::new(lhs);
        Ok(match op {
            None => Formula::Impl(lhs, rhs),
            Some((true, e)) => Formula::FwdImpl(e, lhs, rhs),
            Some((false, e)) => Formula::BwdImpl(e, lhs, rhs),
        })
    }

    fn join(&mut self) -> Result<Formula, ModelError> {
        let mut acc = self.meet()?;
        while self.eat(&Tok::Join) {
            acc = Formula::Join(Box::new(acc), Box::new(self.meet()?));
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Formula, ModelError> {
        let mut acc = self.tensor()?;
        while self.eat(&Tok::Meet) {
            acc = Formula::Meet(Box::new(acc), Box::new(self.tensor()?));
        }
        Ok(acc)
    }

    fn tensor(&mut self) -> Result<Formula, ModelError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Tensor) {
                self.expect(Tok::LBracket)?;
                let e = self.name("an induction label")?;
                self.expect(Tok::RBracket)?;
                acc = Formula::FwdTensor(e, Box::new(acc), Box::new(self.unary()?));
            } else if self.eat(&Tok::LBracket) {
                let e = self.name("an induction label")?;
                self.expect(Tok::RBracket)?;
                self.expect(Tok::Tensor)?;
                acc = Formula::BwdTensor(e, Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, ModelError> {
        if self.eat(&Tok::Tilde) {
            return Ok(Formula::Neg(Box::new(self.unary()?)));
        }
        if self.peek() == Some(&Tok::Name("R".into()))
            && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::LParen)
        {
            self.pos += 2;
            let inner = self.formula()?;
            self.expect(Tok::RParen)?;
            return Ok(Formula::Resolution(Box::new(inner)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ModelError> {
        let expected = "a formula (`dn(x)`, `{..}`, `top`, `bot`, `(`, `~`, `R(` or a set name)";
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let mut names = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        names.push(self.name("an element name")?);
                        if self.eat(&Tok::RBrace) {
                            break;
                        }
                        self.expect(Tok::Comma)?;
                    }
                }
                Ok(Formula::Set(names))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                match n.as_str() {
                    "top" => Ok(Formula::Top),
                    "bot" => Ok(Formula::Bot),
                    "dn" if self.peek() == Some(&Tok::LParen) => {
                        self.pos += 1;
                        let x = self.name("an element name")?;
                        self.expect(Tok::RParen)?;
                        Ok(Formula::Down(x))
                    }
                    _ => Ok(Formula::Named(n)),
                }
            }
            _ => Err(self.error(expected)),
        }
    }
}

/// Parses a formula without resolving names. `line` and `col0` locate the
/// text in its source for diagnostics.
pub fn parse_formula_at(src: &str, line: usize, col0: usize) -> Result<Formula, ModelError> {
    let toks = lex(src, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: col0 + src.chars().count(),
    };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.error("an operator or end of input"));
    }
    Ok(f)
}

/// Parses a formula and checks every name against `model`.
pub fn parse_formula(src: &str, model: &Model) -> Result<Formula, ModelError> {
    let f = parse_formula_at(src, 1, 1)?;
    model.check_names(&f)?;
    Ok(f)
}

/// Evaluates a formula to a distributive ideal of the model's lattice.
pub fn eval_formula(f: &Formula, model: &Model) -> Result<PropertySet, ModelError> {
    let di = model.di()?;
    let rec = |g: &Formula| eval_formula(g, model);
    Ok(match f {
        Formula::Named(n) => model.named_set(n)?,
        Formula::Down(x) => di.principal(model.element(x)?),
        Formula::Set(xs) => {
            let mut set = crate::set::ElemSet::EMPTY;
            for x in xs {
                set.insert(model.element(x)?);
            }
            di.closure(set)
        }
        Formula::Top => di.top(),
        Formula::Bot => di.bottom(),
        Formula::Neg(a) => di.negation(rec(a)?),
        Formula::Resolution(a) => di.resolution(rec(a)?),
        Formula::Meet(a, b) => di.meet(rec(a)?, rec(b)?),
        Formula::Join(a, b) => di.join(rec(a)?, rec(b)?),
        Formula::Impl(a, b) => di.implies(rec(a)?, rec(b)?),
        Formula::FwdImpl(e, a, b) => model.induction(e)?.dyn_impl_fwd(rec(a)?, rec(b)?),
        Formula::BwdImpl(e, a, b) => model.induction(e)?.dyn_impl_bwd(rec(a)?, rec(b)?),
        Formula::FwdTensor(e, a, b) => model.induction(e)?.dyn_tensor_fwd(rec(a)?, rec(b)?),
        Formula::BwdTensor(e, a, b) => model.induction(e)?.dyn_tensor_bwd(rec(a)?, rec(b)?),
    })
}

/// True when `f` evaluates to the whole lattice.
pub fn check_valid(f: &Formula, model: &Model) -> Result<bool, ModelError> {
    Ok(eval_formula(f, model)? == model.di()?.top())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula_at(s, 1, 1).unwrap()
    }

    fn b(f: Formula) -> Box<Formula> {
        Box::new(f)
    }

    fn n(s: &str) -> Formula {
        Formula::Named(s.into())
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            p("a -> b -> c"),
            Formula::Impl(b(n("a")), b(Formula::Impl(b(n("b")), b(n("c")))))
        );
        assert_eq!(
            p("a \\/ b /\\ c"),
            Formula::Join(b(n("a")), b(Formula::Meet(b(n("b")), b(n("c")))))
        );
        assert_eq!(
            p("a /\\ b (x)[e] c (x)[e] d"),
            Formula::Meet(
                b(n("a")),
                b(Formula::FwdTensor(
                    "e".into(),
                    b(Formula::FwdTensor("e".into(), b(n("b")), b(n("c")))),
                    b(n("d"))
                ))
            )
        );
        assert_eq!(
            p("~a [f](x) R(b)"),
            Formula::BwdTensor(
                "f".into(),
                b(Formula::Neg(b(n("a")))),
                b(Formula::Resolution(b(n("b"))))
            )
        );
        assert_eq!(
            p("a -[e]-> b <-[f]- c"),
            Formula::FwdImpl(
                "e".into(),
                b(n("a")),
                b(Formula::BwdImpl("f".into(), b(n("b")), b(n("c"))))
            )
        );
        assert_eq!(p("{}"), Formula::Set(vec![]));
        assert_eq!(p("{a', b}"), Formula::Set(vec!["a'".into(), "b".into()]));
        assert_eq!(
            p("dn(0) \\/ top"),
            Formula::Join(b(Formula::Down("0".into())), b(Formula::Top))
        );
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "dn(a) -> dn(b)",
            "~{a, b} \\/ R(dn(a') /\\ top)",
            "x (x)[e] y [e](x) z -[e]-> bot <-[freeze]- w",
        ] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s}");
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_formula_at("dn(a) -> ", 1, 1).unwrap_err();
        assert!(matches!(err, ModelError::Syntax { col: 10, .. }), "{err:?}");
        let err = parse_formula_at("dn(a) -[ ]-> b", 1, 1).unwrap_err();
        assert!(matches!(err, ModelError::Syntax { col: 10, .. }), "{err:?}");
        let err = parse_formula_at("a b", 1, 1).unwrap_err();
        assert!(matches!(err, ModelError::Syntax { col: 3, .. }), "{err:?}");
        let err = parse_formula_at("a & b", 3, 5).unwrap_err();
        assert!(matches!(err, ModelError::Syntax { line: 3, col: 7, .. }), "{err:?}");
    }
}
