//! Finite quantales, residuation and linear negations.
//!
//! A product is a full `n × n` table over a [`FiniteLattice`]. Join
//! distributivity is checked on binary joins and the empty join, which on a
//! finite lattice covers every join.

use thiserror::Error;

use crate::dynamics::Induction;
use crate::order::{FiniteLattice, LatticeError};
use crate::report::{LawReport, LawSet};
use crate::set::Elem;
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("product table has {got} entries, expected {expected}")]
    WrongTableSize { got: usize, expected: usize },
    #[error("not a quantale: {0}")]
    NotAQuantale(String),
    #[error("quantale has no unit")]
    NotUnital,
    #[error("`{0}` is not a dualizing element")]
    NotDualizing(String),
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A product table on a lattice, with no laws assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTable {
    lattice: FiniteLattice,
    table: Vec<Elem>,
}

impl ProductTable {
    pub fn new(lattice: FiniteLattice, table: Vec<Elem>) -> Result<Self, QuantaleError> {
        let expected = lattice.len() * lattice.len();
        if table.len() != expected {
            return Err(QuantaleError::WrongTableSize {
                got: table.len(),
                expected,
            });
        }
        Ok(ProductTable { lattice, table })
    }

    pub fn from_fn(lattice: FiniteLattice, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let table = lattice
            .elements()
            .flat_map(|a| lattice.elements().map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        ProductTable { lattice, table }
    }

    /// The locale product `a ∘ b = a ∧ b`.
    pub fn locale(lattice: FiniteLattice) -> Self {
        let l = lattice.clone();
        Self::from_fn(lattice, move |a, b| l.meet(a, b))
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn product(&self, a: Elem, b: Elem) -> Elem {
        self.table[a.index() * self.lattice.len() + b.index()]
    }

    fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let l = &self.lattice;
        l.elements().flat_map(move |a| l.elements().map(move |b| (a, b)))
    }

    fn triples(&self) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        let l = &self.lattice;
        self.pairs()
            .flat_map(move |(a, b)| l.elements().map(move |c| (a, b, c)))
    }

    fn fmt_pair(&self, (a, b): (Elem, Elem)) -> String {
        format!("a={}, b={}", self.lattice.name(a), self.lattice.name(b))
    }

    fn fmt_triple(&self, (a, b, c): (Elem, Elem, Elem)) -> String {
        let l = &self.lattice;
        format!("a={}, b={}, c={}", l.name(a), l.name(b), l.name(c))
    }

    pub fn associativity_violation(&self) -> Option<(Elem, Elem, Elem)> {
        let p = |a, b| self.product(a, b);
        self.triples().find(|&(a, b, c)| p(p(a, b), c) != p(a, p(b, c)))
    }

    pub fn commutativity_violation(&self) -> Option<(Elem, Elem)> {
        self.pairs().find(|&(a, b)| self.product(a, b) != self.product(b, a))
    }

    /// `a ∘ (b ∨ c) = a∘b ∨ a∘c` and `a ∘ 0 = 0`; reported as `(a, b, c)`
    /// with `b = c = 0` for the empty join.
    pub fn left_join_violation(&self) -> Option<(Elem, Elem, Elem)> {
        let (l, p) = (&self.lattice, |a, b| self.product(a, b));
        let z = l.bottom();
        l.elements().find(|&a| p(a, z) != z).map(|a| (a, z, z)).or_else(|| {
            self.triples()
                .find(|&(a, b, c)| p(a, l.join(b, c)) != l.join(p(a, b), p(a, c)))
        })
    }

    /// `(b ∨ c) ∘ a = b∘a ∨ c∘a` and `0 ∘ a = 0`.
    pub fn right_join_violation(&self) -> Option<(Elem, Elem, Elem)> {
        let (l, p) = (&self.lattice, |a, b| self.product(a, b));
        let z = l.bottom();
        l.elements().find(|&a| p(z, a) != z).map(|a| (a, z, z)).or_else(|| {
            self.triples()
                .find(|&(a, b, c)| p(l.join(b, c), a) != l.join(p(b, a), p(c, a)))
        })
    }

    /// `a ∘ (b ∧ c) = a∘b ∧ a∘c`.
    pub fn right_meet_violation(&self) -> Option<(Elem, Elem, Elem)> {
        let (l, p) = (&self.lattice, |a, b| self.product(a, b));
        self.triples()
            .find(|&(a, b, c)| p(a, l.meet(b, c)) != l.meet(p(a, b), p(a, c)))
    }

    /// `(b ∧ c) ∘ a = b∘a ∧ c∘a`.
    pub fn left_meet_violation(&self) -> Option<(Elem, Elem, Elem)> {
        let (l, p) = (&self.lattice, |a, b| self.product(a, b));
        self.triples()
            .find(|&(a, b, c)| p(l.meet(b, c), a) != l.meet(p(b, a), p(c, a)))
    }

    /// `a ∘ 1 = 1` (product in its right argument preserves the empty meet).
    pub fn right_top_violation(&self) -> Option<Elem> {
        let t = self.lattice.top();
        self.lattice.elements().find(|&a| self.product(a, t) != t)
    }

    pub fn left_top_violation(&self) -> Option<Elem> {
        let t = self.lattice.top();
        self.lattice.elements().find(|&a| self.product(t, a) != t)
    }

    /// Associativity and two-sided join distributivity.
    pub fn verify_quantale(&self) -> LawSet {
        let mut set = LawSet::new();
        let t = |w| self.fmt_triple(w);
        set.push(LawReport::from_violation(
            "associativity",
            self.associativity_violation(),
            t,
        ));
        set.push(LawReport::from_violation(
            "a ∘ ⋁B = ⋁(a ∘ B)",
            self.left_join_violation(),
            t,
        ));
        set.push(LawReport::from_violation(
            "(⋁B) ∘ a = ⋁(B ∘ a)",
            self.right_join_violation(),
            t,
        ));
        set
    }

    pub fn verify_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }

    /// Associativity and meet distributivity in the right argument. The
    /// remaining meet laws are recorded as observations.
    pub fn verify_coquantale(&self) -> LawSet {
        let mut set = LawSet::new();
        let t = |w| self.fmt_triple(w);
        let name = |a| self.lattice.name(a).to_owned();
        set.push(LawReport::from_violation(
            "associativity",
            self.associativity_violation(),
            t,
        ));
        set.push(LawReport::from_violation(
            "a ∘ (b ∧ c) = a∘b ∧ a∘c",
            self.right_meet_violation(),
            t,
        ));
        set.note(LawReport::from_violation(
            "(b ∧ c) ∘ a = b∘a ∧ c∘a",
            self.left_meet_violation(),
            t,
        ));
        set.note(LawReport::from_violation("a ∘ 1 = 1", self.right_top_violation(), name));
        set.note(LawReport::from_violation("1 ∘ a = 1", self.left_top_violation(), name));
        set.note(LawReport::from_violation(
            "commutativity",
            self.commutativity_violation(),
            |w| self.fmt_pair(w),
        ));
        set
    }

    /// `e` with `e∘a = a = a∘e` for all `a`.
    pub fn find_unit(&self) -> Option<Elem> {
        let l = &self.lattice;
        l.elements()
            .find(|&e| l.elements().all(|a| self.product(e, a) == a && self.product(a, e) == a))
    }
}

/// A product table satisfying the quantale laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuantale {
    table: ProductTable,
    unit: Option<Elem>,
}

/// A dualizing element and whether it is cyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dualizing {
    pub element: Elem,
    pub cyclic: bool,
}

impl FiniteQuantale {
    pub fn new(table: ProductTable) -> Result<Self, QuantaleError> {
        if let Some(f) = table.verify_quantale().failures().next() {
            return Err(QuantaleError::NotAQuantale(format!(
                "{} fails at {}",
                f.law,
                f.witness.as_deref().unwrap_or("?")
            )));
        }
        let unit = table.find_unit();
        Ok(FiniteQuantale { table, unit })
    }

    pub fn locale(lattice: FiniteLattice) -> Result<Self, QuantaleError> {
        Self::new(ProductTable::locale(lattice))
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.table.lattice
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    pub fn product(&self, a: Elem, b: Elem) -> Elem {
        self.table.product(a, b)
    }

    /// `a ⊸ b = ⋁{c | a∘c ≤ b}`.
    pub fn residual_right(&self, a: Elem, b: Elem) -> Elem {
        let l = self.lattice();
        l.join_set(l.elements().filter(|&c| l.leq(self.product(a, c), b)).collect())
    }

    /// `b ⟜ a = ⋁{c | c∘a ≤ b}`.
    pub fn residual_left(&self, b: Elem, a: Elem) -> Elem {
        let l = self.lattice();
        l.join_set(l.elements().filter(|&c| l.leq(self.product(c, a), b)).collect())
    }

    /// Both residuation adjunctions, over all triples.
    pub fn residual_laws(&self) -> LawSet {
        let l = self.lattice();
        let t = &self.table;
        let mut set = LawSet::new();
        set.push(LawReport::from_violation(
            "a∘c ≤ b ⟺ c ≤ a ⊸ b",
            t.triples()
                .find(|&(a, b, c)| l.leq(self.product(a, c), b) != l.leq(c, self.residual_right(a, b))),
            |w| t.fmt_triple(w),
        ));
        set.push(LawReport::from_violation(
            "c∘a ≤ b ⟺ c ≤ b ⟜ a",
            t.triples()
                .find(|&(a, b, c)| l.leq(self.product(c, a), b) != l.leq(c, self.residual_left(b, a))),
            |w| t.fmt_triple(w),
        ));
        set
    }

    fn is_dualizing(&self, d: Elem) -> bool {
        self.lattice().elements().all(|a| {
            self.residual_left(d, self.residual_right(a, d)) == a
                && self.residual_right(self.residual_left(d, a), d) == a
        })
    }

    fn is_cyclic(&self, d: Elem) -> bool {
        self.lattice()
            .elements()
            .all(|a| self.residual_right(a, d) == self.residual_left(d, a))
    }

    /// Every dualizing element, in element order.
    pub fn dualizing_elements(&self) -> Result<Vec<Dualizing>, QuantaleError> {
        if self.unit.is_none() {
            return Err(QuantaleError::NotUnital);
        }
        Ok(self
            .lattice()
            .elements()
            .filter(|&d| self.is_dualizing(d))
            .map(|d| Dualizing {
                element: d,
                cyclic: self.is_cyclic(d),
            })
            .collect())
    }

    pub fn find_cyclic_dualizing(&self) -> Result<Vec<Elem>, QuantaleError> {
        Ok(self
            .dualizing_elements()?
            .into_iter()
            .filter(|d| d.cyclic)
            .map(|d| d.element)
            .collect())
    }

    /// The first cyclic dualizing element, if this is a Girard quantale.
    pub fn girard_bottom(&self) -> Result<Option<Elem>, QuantaleError> {
        Ok(self.find_cyclic_dualizing()?.first().copied())
    }

    pub fn is_girard(&self) -> Result<bool, QuantaleError> {
        Ok(self.girard_bottom()?.is_some())
    }

    fn require_dualizing(&self, bot: Elem) -> Result<(), QuantaleError> {
        if self.is_dualizing(bot) {
            Ok(())
        } else {
            Err(QuantaleError::NotDualizing(self.lattice().name(bot).to_owned()))
        }
    }

    /// `(a^⊥, ^⊥a) = (a ⊸ ⊥, ⊥ ⟜ a)`.
    pub fn linear_negations(&self, bot: Elem, a: Elem) -> Result<(Elem, Elem), QuantaleError> {
        self.require_dualizing(bot)?;
        Ok(self.negations(bot, a))
    }

    fn negations(&self, bot: Elem, a: Elem) -> (Elem, Elem) {
        (self.residual_right(a, bot), self.residual_left(bot, a))
    }

    /// `a ℘ b = ^⊥(b^⊥ ⊗ a^⊥)`, so that `(a ℘ b)^⊥ = b^⊥ ⊗ a^⊥`.
    pub fn par(&self, bot: Elem, a: Elem, b: Elem) -> Result<Elem, QuantaleError> {
        self.require_dualizing(bot)?;
        Ok(self.par_unchecked(bot, a, b))
    }

    fn par_unchecked(&self, bot: Elem, a: Elem, b: Elem) -> Elem {
        let post = |x| self.residual_right(x, bot);
        self.residual_left(bot, self.product(post(b), post(a)))
    }

    /// `(⊥ ⟜ (a ⊸ ⊥), (⊥ ⟜ a) ⊸ ⊥)` for every `a`.
    pub fn abrusci_composites(&self, bot: Elem) -> Vec<(Elem, Elem, Elem)> {
        self.lattice()
            .elements()
            .map(|a| {
                (
                    a,
                    self.residual_left(bot, self.residual_right(a, bot)),
                    self.residual_right(self.residual_left(bot, a), bot),
                )
            })
            .collect()
    }

    /// Negation and par identities for the dualizing element `bot`.
    ///
    /// The identities that need cyclicity are required only when `bot` is
    /// cyclic; otherwise the two negation composites are recorded as
    /// observations.
    pub fn linear_laws(&self, bot: Elem) -> Result<LawSet, QuantaleError> {
        self.require_dualizing(bot)?;
        let l = self.lattice();
        let t = &self.table;
        let post = |x| self.residual_right(x, bot);
        let retro = |x| self.residual_left(bot, x);
        let par = |x, y| self.par_unchecked(bot, x, y);
        let name = |a| l.name(a).to_owned();
        let pair = |w| t.fmt_pair(w);
        let mut set = LawSet::new();
        set.push(LawReport::from_violation(
            "(a ℘ b)^⊥ = b^⊥ ⊗ a^⊥",
            t.pairs()
                .find(|&(a, b)| post(par(a, b)) != self.product(post(b), post(a))),
            pair,
        ));
        if self.is_cyclic(bot) {
            set.push(LawReport::from_violation(
                "a^⊥^⊥ = a",
                l.elements().find(|&a| post(post(a)) != a),
                name,
            ));
            set.push(LawReport::from_violation(
                "(a ⊗ b)^⊥ = b^⊥ ℘ a^⊥",
                t.pairs()
                    .find(|&(a, b)| post(self.product(a, b)) != par(post(b), post(a))),
                pair,
            ));
            set.push(LawReport::from_violation(
                "a ⊸ b = a^⊥ ℘ b",
                t.pairs().find(|&(a, b)| self.residual_right(a, b) != par(post(a), b)),
                pair,
            ));
            set.push(LawReport::from_violation(
                "a ⊸ b = b^⊥ ⊸ a^⊥",
                t.pairs()
                    .find(|&(a, b)| self.residual_right(a, b) != self.residual_right(post(b), post(a))),
                pair,
            ));
        } else {
            set.push(LawReport::from_violation(
                "^⊥(a^⊥) = a = (^⊥a)^⊥",
                l.elements().find(|&a| retro(post(a)) != a || post(retro(a)) != a),
                name,
            ));
            for (a, x, y) in self.abrusci_composites(bot) {
                let law = format!("⊥ ⟜ ({0} ⊸ ⊥) vs (⊥ ⟜ {0}) ⊸ ⊥", l.name(a));
                set.note(LawReport {
                    law,
                    holds: x == y,
                    witness: Some(format!("{} vs {}", l.name(x), l.name(y))),
                });
            }
        }
        Ok(set)
    }
}

/// Which dynamic tensor to use as the product on `DI(L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `A ⊗ₑ B = ê*(A ∧ B)`, expected to form a commutative quantale.
    Fwd,
    /// `A ₑ⊗ B = A ∧ ê_*(B)`, expected to form a co-quantale.
    Bwd,
}

impl std::str::FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fwd" => Ok(Direction::Fwd),
            "bwd" => Ok(Direction::Bwd),
            _ => Err(format!("unknown direction `{s}` (expected fwd or bwd)")),
        }
    }
}

/// A dynamic tensor on `DI(L)` with its law report.
#[derive(Debug, Clone)]
pub struct InductionQuantale {
    pub direction: Direction,
    pub table: ProductTable,
    pub report: LawSet,
}

impl InductionQuantale {
    pub fn holds(&self) -> bool {
        self.report.holds()
    }
}

/// Builds `(DI(L), ⊗ₑ)` or `(DI(L), ₑ⊗)` as a product table and checks the
/// matching laws. The forward tensor must also be commutative with `↓0` as
/// a two-sided zero.
pub fn quantale_of_induction(
    e: &Induction,
    direction: Direction,
    caps: &Caps,
) -> Result<InductionQuantale, QuantaleError> {
    let di = e.di();
    let n = di.len();
    if n > caps.algebra_size {
        return Err(QuantaleError::SizeCapExceeded(format!(
            "{n} ideals exceed the algebra cap of {}",
            caps.algebra_size
        )));
    }
    let lattice = di.as_lattice()?;
    let table = ProductTable::from_fn(lattice, |a, b| {
        let (x, y) = (di.get(a.index()), di.get(b.index()));
        let r = match direction {
            Direction::Fwd => e.dyn_tensor_fwd(x, y),
            Direction::Bwd => e.dyn_tensor_bwd(x, y),
        };
        Elem::new(di.index_of(r))
    });
    let report = match direction {
        Direction::Fwd => {
            let mut set = table.verify_quantale();
            set.push(LawReport::from_violation(
                "commutativity",
                table.commutativity_violation(),
                |w| table.fmt_pair(w),
            ));
            let z = table.lattice().bottom();
            set.push(LawReport::from_violation(
                "⊥ is a two-sided zero",
                table
                    .lattice()
                    .elements()
                    .find(|&a| table.product(a, z) != z || table.product(z, a) != z),
                |a| table.lattice().name(a).to_owned(),
            ));
            set
        }
        Direction::Bwd => table.verify_coquantale(),
    };
    Ok(InductionQuantale {
        direction,
        table,
        report,
    })
}
