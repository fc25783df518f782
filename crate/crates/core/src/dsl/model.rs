//! The line-oriented model file.
//!
//! ```text
//! file      := section*
//! section   := header NEWLINE line*          headers start in column 1
//! header    := "lattice:" | "order:" | "ortho:" | "states:" | "orth:"
//!            | "closed:" | "sets:" | "induction" NAME ":"
//! lattice   := NAME+                         element names, in order
//! order     := NAME ( "<" NAME )+            a chain of order facts
//! ortho     := NAME "<->" NAME
//! states    := NAME+
//! orth      := NAME "_|_" NAME
//! closed    := set+
//! induction := NAME "->" set                 atom and its image
//! sets      := NAME "=" formula
//! set       := "{" ( NAME ( "," NAME )* )? "}"
//! ```
//!
//! `#` starts a comment. An image `{x, y}` stands for the distributive
//! ideal generated by `x` and `y`. The lattice section may be omitted when
//! a state space is given; the lattice is then its closed subsets.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::dynamics::{DynError, Induction};
use crate::ideals::{enumerate_di, DiLattice, IdealError, PropertySet};
use crate::order::{build_lattice, FiniteLattice, LatticeError};
use crate::ortho::{attach_ortho, ClosureSpace, OrthoError, OrthoLattice, StateClosure, StateSpace};
use crate::set::{Elem, ElemSet};
use crate::Caps;

use super::formula::{eval_formula, parse_formula_at, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}, column {col}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("unknown induction `{0}`")]
    UnknownInduction(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown property set `{0}`")]
    UnknownSet(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Dyn(#[from] DynError),
}

pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

/// A parsed value with its source line. Equality ignores the line.
#[derive(Debug, Clone)]
pub struct Item<T> {
    pub value: T,
    pub line: usize,
}

impl<T> Item<T> {
    pub fn new(value: T) -> Self {
        Item { value, line: 0 }
    }
}

impl<T: PartialEq> PartialEq for Item<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Item<T> {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionDecl {
    pub name: String,
    pub images: Vec<Item<(String, Vec<String>)>>,
}

/// The syntax of a model file, before any structure is checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelFile {
    pub elements: Option<Vec<Item<String>>>,
    pub order: Vec<Item<(String, String)>>,
    pub ortho: Option<Vec<Item<(String, String)>>>,
    pub states: Option<Vec<Item<String>>>,
    pub orth: Option<Vec<Item<(String, String)>>>,
    pub closed: Option<Vec<Item<Vec<String>>>>,
    pub inductions: Vec<Item<InductionDecl>>,
    pub sets: Vec<Item<(String, String)>>,
}

struct LineLexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl LineLexer {
    fn new(src: &str, line: usize) -> Self {
        LineLexer {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn error(&mut self, expected: &str) -> ModelError {
        self.skip_ws();
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("`{c}`"),
            None => "end of line".into(),
        };
        ModelError::Syntax {
            line: self.line,
            col: self.col(),
            expected: expected.into(),
            found,
        }
    }

    fn peek_sym(&mut self, sym: &str) -> bool {
        self.skip_ws();
        self.chars[self.pos..]
            .iter()
            .take(sym.chars().count())
            .copied()
            .eq(sym.chars())
    }

    fn eat_sym(&mut self, sym: &str) -> bool {
        if self.peek_sym(sym) {
            self.pos += sym.chars().count();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, sym: &str) -> Result<(), ModelError> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            Err(self.error(&format!("`{sym}`")))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ModelError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && is_name_char(self.chars[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(what));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn names(&mut self, what: &str) -> Result<Vec<String>, ModelError> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(self.name(what)?);
        }
        Ok(out)
    }

    fn set(&mut self) -> Result<Vec<String>, ModelError> {
        self.expect_sym("{")?;
        let mut out = Vec::new();
        if self.eat_sym("}") {
            return Ok(out);
        }
        loop {
            out.push(self.name("an element name")?);
            if self.eat_sym("}") {
                return Ok(out);
            }
            self.expect_sym(",")?;
        }
    }

    fn finish(&mut self) -> Result<(), ModelError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of line"))
        }
    }

    fn rest(&mut self) -> (String, usize) {
        self.skip_ws();
        let col = self.col();
        let s: String = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        (s.trim_end().to_owned(), col)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Lattice,
    Order,
    Ortho,
    States,
    Orth,
    Closed,
    Sets,
    Induction,
}

impl ModelFile {
    /// Parses the syntax of a model file.
    pub fn parse(text: &str) -> Result<ModelFile, ModelError> {
        let mut file = ModelFile::default();
        let mut section: Option<Section> = None;
        let mut seen: Vec<Section> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let indented = content.starts_with(char::is_whitespace);
            if !indented && content.trim_end().ends_with(':') {
                let head = content.trim_end().trim_end_matches(':').trim();
                let sec = match head {
                    "lattice" => Section::Lattice,
                    "order" => Section::Order,
                    "ortho" => Section::Ortho,
                    "states" => Section::States,
                    "orth" => Section::Orth,
                    "closed" => Section::Closed,
                    "sets" => Section::Sets,
                    _ => {
                        let mut lx = LineLexer::new(head, line);
                        if lx.name("a section name").ok().as_deref() != Some("induction") {
                            return Err(ModelError::Syntax {
                                line,
                                col: 1,
                                expected: "a section header".into(),
                                found: format!("`{head}:`"),
                            });
                        }
                        let name = lx.name("an induction name")?;
                        lx.finish()?;
                        file.inductions.push(Item {
                            value: InductionDecl { name, images: vec![] },
                            line,
                        });
                        section = Some(Section::Induction);
                        continue;
                    }
                };
                if seen.contains(&sec) {
                    return Err(ModelError::Semantic {
                        line,
                        message: format!("section `{head}` appears twice"),
                    });
                }
                seen.push(sec);
                match sec {
                    Section::Lattice => file.elements = Some(vec![]),
                    Section::Ortho => file.ortho = Some(vec![]),
                    Section::States => file.states = Some(vec![]),
                    Section::Orth => file.orth = Some(vec![]),
                    Section::Closed => file.closed = Some(vec![]),
                    _ => {}
                }
                section = Some(sec);
                continue;
            }
            let Some(sec) = section else {
                return Err(ModelError::Syntax {
                    line,
                    col: 1,
                    expected: "a section header".into(),
                    found: format!("`{}`", content.trim()),
                });
            };
            let mut lx = LineLexer::new(content, line);
            match sec {
                Section::Lattice => {
                    let names = lx.names("an element name")?;
                    let v = file.elements.as_mut().expect("section opened");
                    v.extend(names.into_iter().map(|value| Item { value, line }));
                }
                Section::States => {
                    let names = lx.names("a state name")?;
                    let v = file.states.as_mut().expect("section opened");
                    v.extend(names.into_iter().map(|value| Item { value, line }));
                }
                Section::Order => {
                    let mut prev = lx.name("an element name")?;
                    lx.expect_sym("<")?;
                    loop {
                        let next = lx.name("an element name")?;
                        file.order.push(Item {
                            value: (prev, next.clone()),
                            line,
                        });
                        prev = next;
                        if lx.at_end() {
                            break;
                        }
                        lx.expect_sym("<")?;
                    }
                }
                Section::Ortho => {
                    let a = lx.name("an element name")?;
                    lx.expect_sym("<->")?;
                    let b = lx.name("an element name")?;
                    lx.finish()?;
                    file.ortho
                        .as_mut()
                        .expect("section opened")
                        .push(Item { value: (a, b), line });
                }
                Section::Orth => {
                    let a = lx.name("a state name")?;
                    lx.expect_sym("_|_")?;
                    let b = lx.name("a state name")?;
                    lx.finish()?;
                    file.orth
                        .as_mut()
                        .expect("section opened")
                        .push(Item { value: (a, b), line });
                }
                Section::Closed => {
                    let v = file.closed.as_mut().expect("section opened");
                    while !lx.at_end() {
                        v.push(Item { value: lx.set()?, line });
                    }
                }
                Section::Induction => {
                    let atom = lx.name("an atom name")?;
                    lx.expect_sym("->")?;
                    let image = lx.set()?;
                    lx.finish()?;
                    let decl = file.inductions.last_mut().expect("section opened");
                    decl.value.images.push(Item {
                        value: (atom, image),
                        line,
                    });
                }
                Section::Sets => {
                    let name = lx.name("a set name")?;
                    lx.expect_sym("=")?;
                    let (rest, col) = lx.rest();
                    parse_formula_at(&rest, line, col)?;
                    file.sets.push(Item {
                        value: (name, rest),
                        line,
                    });
                }
            }
        }
        Ok(file)
    }

    /// Canonical text: one section per block, one fact per line.
    pub fn unparse(&self) -> String {
        let mut out = String::new();
        let mut block = |header: &str, lines: Vec<String>| {
            out.push_str(header);
            out.push('\n');
            for l in lines {
                out.push_str("  ");
                out.push_str(&l);
                out.push('\n');
            }
        };
        let join_names = |v: &[Item<String>]| v.iter().map(|i| i.value.as_str()).collect::<Vec<_>>().join(" ");
        let set = |v: &[String]| format!("{{{}}}", v.join(", "));
        if let Some(els) = &self.elements {
            block("lattice:", vec![join_names(els)]);
            block(
                "order:",
                self.order
                    .iter()
                    .map(|i| format!("{} < {}", i.value.0, i.value.1))
                    .collect(),
            );
        }
        if let Some(o) = &self.ortho {
            block(
                "ortho:",
                o.iter().map(|i| format!("{} <-> {}", i.value.0, i.value.1)).collect(),
            );
        }
        if let Some(s) = &self.states {
            block("states:", vec![join_names(s)]);
        }
        if let Some(o) = &self.orth {
            block(
                "orth:",
                o.iter().map(|i| format!("{} _|_ {}", i.value.0, i.value.1)).collect(),
            );
        }
        if let Some(c) = &self.closed {
            block(
                "closed:",
                vec![c.iter().map(|i| set(&i.value)).collect::<Vec<_>>().join(" ")],
            );
        }
        for ind in &self.inductions {
            block(
                &format!("induction {}:", ind.value.name),
                ind.value
                    .images
                    .iter()
                    .map(|i| format!("{} -> {}", i.value.0, set(&i.value.1)))
                    .collect(),
            );
        }
        if !self.sets.is_empty() {
            block(
                "sets:",
                self.sets
                    .iter()
                    .map(|i| format!("{} = {}", i.value.0, i.value.1))
                    .collect(),
            );
        }
        out
    }
}

/// The state space of a model.
#[derive(Debug, Clone)]
pub enum Space {
    Orthogonality(StateSpace),
    Closure(ClosureSpace),
}

impl Space {
    pub fn as_closure(&self) -> &dyn StateClosure {
        match self {
            Space::Orthogonality(s) => s,
            Space::Closure(s) => s,
        }
    }
}

/// A checked model: lattice, optional orthocomplement and state space,
/// inductions and named property sets.
#[derive(Debug)]
pub struct Model {
    file: ModelFile,
    lattice: FiniteLattice,
    ortho: Option<OrthoLattice>,
    space: Option<Space>,
    caps: Caps,
    di: OnceLock<Result<Arc<DiLattice>, IdealError>>,
    inductions: Vec<Induction>,
    freeze: OnceLock<Result<Induction, DynError>>,
    sets: Vec<(String, Formula)>,
}

fn semantic(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Semantic {
        line,
        message: message.into(),
    }
}

/// Parses and checks a model.
pub fn parse_model(text: &str, caps: Caps) -> Result<Model, ModelError> {
    Model::from_file(ModelFile::parse(text)?, caps)
}

impl Model {
    pub fn from_file(file: ModelFile, caps: Caps) -> Result<Model, ModelError> {
        let space = Self::build_space(&file)?;
        let declared = file
            .elements
            .as_ref()
            .map(|els| Self::build_lattice(&file, els))
            .transpose()?;
        let (lattice, derived_ortho) = match (&declared, &space) {
            (Some(l), None) => (l.clone(), None),
            (declared, Some(sp)) => {
                let (sl, _) = sp.as_closure().closed_lattice()?;
                let line = file.states.as_ref().and_then(|s| s.first()).map_or(0, |i| i.line);
                if let Some(l) = declared {
                    if !same_order(l, &sl) {
                        return Err(semantic(
                            line,
                            format!(
                                "declared lattice does not match the closed subsets of the state space ({})",
                                sl.names().join(" ")
                            ),
                        ));
                    }
                }
                let derived = match sp {
                    Space::Orthogonality(s) if file.ortho.is_none() => Some(s.closed_subsets_lattice()?.0),
                    _ => None,
                };
                (declared.clone().unwrap_or(sl), derived)
            }
            (None, None) => return Err(semantic(1, "model needs a `lattice:` or a `states:` section")),
        };
        let ortho = match &file.ortho {
            Some(pairs) => Some(Self::build_ortho(&lattice, pairs)?),
            None => derived_ortho
                .map(|o| OrthoLattice::new(lattice.clone(), o.ortho_table().to_vec()))
                .transpose()?,
        };
        let mut model = Model {
            file,
            lattice,
            ortho,
            space,
            caps,
            di: OnceLock::new(),
            inductions: Vec::new(),
            freeze: OnceLock::new(),
            sets: Vec::new(),
        };
        model.build_inductions()?;
        model.build_sets()?;
        Ok(model)
    }

    fn build_space(file: &ModelFile) -> Result<Option<Space>, ModelError> {
        let Some(states) = &file.states else {
            if let Some(item) = file.orth.as_ref().and_then(|o| o.first()).or(None) {
                return Err(semantic(item.line, "`orth:` needs a `states:` section"));
            }
            if let Some(item) = file.closed.as_ref().and_then(|c| c.first()) {
                return Err(semantic(item.line, "`closed:` needs a `states:` section"));
            }
            return Ok(None);
        };
        let line = states.first().map_or(0, |i| i.line);
        let names: Vec<&str> = states.iter().map(|i| i.value.as_str()).collect();
        let known = |s: &str| names.contains(&s);
        match (&file.orth, &file.closed) {
            (Some(_), Some(c)) => Err(semantic(
                c.first().map_or(line, |i| i.line),
                "give either `orth:` or `closed:`, not both",
            )),
            (_, Some(closed)) => {
                for item in closed {
                    if let Some(s) = item.value.iter().find(|s| !known(s)) {
                        return Err(semantic(item.line, format!("unknown state `{s}`")));
                    }
                }
                let family: Vec<Vec<&str>> = closed
                    .iter()
                    .map(|i| i.value.iter().map(String::as_str).collect())
                    .collect();
                let first = closed.first().map_or(line, |i| i.line);
                ClosureSpace::new(&names, &family)
                    .map(|s| Some(Space::Closure(s)))
                    .map_err(|e| semantic(first, e.to_string()))
            }
            (orth, None) => {
                let pairs = orth.as_deref().unwrap_or(&[]);
                for item in pairs {
                    for s in [&item.value.0, &item.value.1] {
                        if !known(s) {
                            return Err(semantic(item.line, format!("unknown state `{s}`")));
                        }
                    }
                }
                let pairs: Vec<(&str, &str)> = pairs.iter().map(|i| (i.value.0.as_str(), i.value.1.as_str())).collect();
                StateSpace::new(&names, &pairs)
                    .map(|s| Some(Space::Orthogonality(s)))
                    .map_err(|e| semantic(line, e.to_string()))
            }
        }
    }

    fn build_lattice(file: &ModelFile, els: &[Item<String>]) -> Result<FiniteLattice, ModelError> {
        let names: Vec<&str> = els.iter().map(|i| i.value.as_str()).collect();
        let pairs: Vec<(&str, &str)> = file
            .order
            .iter()
            .map(|i| (i.value.0.as_str(), i.value.1.as_str()))
            .collect();
        let first_line = els.first().map_or(1, |i| i.line);
        build_lattice(&names, &pairs).map_err(|e| {
            let line = match &e {
                LatticeError::DuplicateElement(n) => els.iter().filter(|i| &i.value == n).nth(1).map(|i| i.line),
                LatticeError::UnknownElement(n) => file
                    .order
                    .iter()
                    .find(|i| &i.value.0 == n || &i.value.1 == n)
                    .map(|i| i.line),
                _ => file.order.first().map(|i| i.line),
            };
            semantic(line.unwrap_or(first_line), e.to_string())
        })
    }

    fn build_ortho(lattice: &FiniteLattice, pairs: &[Item<(String, String)>]) -> Result<OrthoLattice, ModelError> {
        let first = pairs.first().map_or(1, |i| i.line);
        for item in pairs {
            for s in [&item.value.0, &item.value.1] {
                if lattice.elem(s).is_none() {
                    return Err(semantic(item.line, format!("unknown element `{s}`")));
                }
            }
        }
        let ps: Vec<(&str, &str)> = pairs.iter().map(|i| (i.value.0.as_str(), i.value.1.as_str())).collect();
        attach_ortho(lattice.clone(), &ps).map_err(|e| semantic(first, e.to_string()))
    }

    fn build_inductions(&mut self) -> Result<(), ModelError> {
        let decls = self.file.inductions.clone();
        let mut names: Vec<&str> = Vec::new();
        for decl in &decls {
            if names.contains(&decl.value.name.as_str()) {
                return Err(semantic(
                    decl.line,
                    format!("induction `{}` declared twice", decl.value.name),
                ));
            }
            names.push(&decl.value.name);
            for item in &decl.value.images {
                let (atom, image) = &item.value;
                for n in std::iter::once(atom).chain(image) {
                    if self.lattice.elem(n).is_none() {
                        return Err(semantic(item.line, format!("unknown element `{n}`")));
                    }
                }
            }
        }
        if decls.is_empty() {
            return Ok(());
        }
        let di = self.di()?;
        for decl in &decls {
            let d = &decl.value;
            let line_of = |atom: &str| {
                d.images
                    .iter()
                    .find(|i| i.value.0 == atom)
                    .map_or(decl.line, |i| i.line)
            };
            let mut images = Vec::new();
            for item in &d.images {
                let atom = self.element(&item.value.0)?;
                let mut set = ElemSet::EMPTY;
                for n in &item.value.1 {
                    set.insert(self.element(n)?);
                }
                images.push((atom, di.closure(set).members()));
            }
            let e = Induction::from_images(di.clone(), &d.name, &images).map_err(|err| {
                let line = match &err {
                    DynError::InvalidImage { atom, .. } => line_of(atom),
                    _ => decl.line,
                };
                semantic(line, format!("induction `{}`: {err}", d.name))
            })?;
            self.inductions.push(e);
        }
        Ok(())
    }

    fn build_sets(&mut self) -> Result<(), ModelError> {
        for item in self.file.sets.clone() {
            let (name, src) = &item.value;
            if self.sets.iter().any(|(n, _)| n == name) {
                return Err(semantic(item.line, format!("property set `{name}` declared twice")));
            }
            let f = parse_formula_at(src, item.line, 1)?;
            self.check_names(&f).map_err(|e| semantic(item.line, e.to_string()))?;
            self.sets.push((name.clone(), f));
        }
        Ok(())
    }

    /// Rejects unknown element, induction and set names in `f`.
    pub fn check_names(&self, f: &Formula) -> Result<(), ModelError> {
        match f {
            Formula::Named(n) => {
                if !self.sets.iter().any(|(m, _)| m == n) {
                    return Err(ModelError::UnknownSet(n.clone()));
                }
            }
            Formula::Down(x) => {
                self.element(x)?;
            }
            Formula::Set(xs) => {
                for x in xs {
                    self.element(x)?;
                }
            }
            Formula::Top | Formula::Bot => {}
            Formula::Neg(a) | Formula::Resolution(a) => self.check_names(a)?,
            Formula::Meet(a, b) | Formula::Join(a, b) | Formula::Impl(a, b) => {
                self.check_names(a)?;
                self.check_names(b)?;
            }
            Formula::FwdImpl(e, a, b)
            | Formula::BwdImpl(e, a, b)
            | Formula::FwdTensor(e, a, b)
            | Formula::BwdTensor(e, a, b) => {
                if e != "freeze" && !self.inductions.iter().any(|i| i.name() == e) {
                    return Err(ModelError::UnknownInduction(e.clone()));
                }
                self.check_names(a)?;
                self.check_names(b)?;
            }
        }
        Ok(())
    }

    pub fn file(&self) -> &ModelFile {
        &self.file
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn ortho(&self) -> Option<&OrthoLattice> {
        self.ortho.as_ref()
    }

    pub fn space(&self) -> Option<&Space> {
        self.space.as_ref()
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn element(&self, name: &str) -> Result<Elem, ModelError> {
        self.lattice
            .elem(name)
            .ok_or_else(|| ModelError::UnknownElement(name.to_owned()))
    }

    /// `DI(L)`, enumerated on first use.
    pub fn di(&self) -> Result<Arc<DiLattice>, ModelError> {
        self.di
            .get_or_init(|| enumerate_di(&self.lattice, &self.caps).map(Arc::new))
            .clone()
            .map_err(ModelError::from)
    }

    /// Declared inductions, in file order.
    pub fn inductions(&self) -> &[Induction] {
        &self.inductions
    }

    /// A declared induction, or the built-in `freeze` if none is declared
    /// under that name.
    pub fn induction(&self, name: &str) -> Result<&Induction, ModelError> {
        if let Some(e) = self.inductions.iter().find(|e| e.name() == name) {
            return Ok(e);
        }
        if name != "freeze" {
            return Err(ModelError::UnknownInduction(name.to_owned()));
        }
        let di = self.di()?;
        self.freeze
            .get_or_init(|| Induction::freeze(di))
            .as_ref()
            .map_err(|e| ModelError::Dyn(e.clone()))
    }

    pub fn set_names(&self) -> impl Iterator<Item = &str> {
        self.sets.iter().map(|(n, _)| n.as_str())
    }

    pub fn named_set(&self, name: &str) -> Result<PropertySet, ModelError> {
        let (_, f) = self
            .sets
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| ModelError::UnknownSet(name.to_owned()))?;
        eval_formula(f, self)
    }
}

/// Same element names with the same order, regardless of element order.
fn same_order(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let map: HashMap<Elem, Elem> = match a
        .elements()
        .map(|x| b.elem(a.name(x)).map(|y| (x, y)))
        .collect::<Option<_>>()
    {
        Some(m) => m,
        None => return false,
    };
    a.elements()
        .all(|x| a.elements().all(|y| a.leq(x, y) == b.leq(map[&x], map[&y])))
}

impl From<OrthoError> for ModelError {
    fn from(e: OrthoError) -> Self {
        semantic(0, e.to_string())
    }
}

impl From<LatticeError> for ModelError {
    fn from(e: LatticeError) -> Self {
        semantic(0, e.to_string())
    }
}
