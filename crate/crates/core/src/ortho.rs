//! Orthocomplemented lattices, the Sasaki maps, state spaces and the
//! Cartan map.

use thiserror::Error;

use crate::order::{FiniteLattice, LatticeError};
use crate::report::{LawReport, LawSet};
use crate::set::{Elem, ElemSet, StateSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("complement of `{0}` is missing or conflicting; the pairs must form an involution")]
    NotInvolution(String),
    #[error("complement is not antitone: `{0}` <= `{1}` but `{1}'` is not below `{0}'`")]
    NotAntitone(String, String),
    #[error("complement law fails at `{0}`: a ∧ a' is not bottom")]
    ComplementLawFails(String),
    #[error("state `{0}` is orthogonal to itself")]
    SelfOrthogonal(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("{0} states exceed the cap of {1}")]
    TooManyStates(usize, usize),
    #[error("closed sets are not a closure system: {0}")]
    NotClosureSystem(String),
    #[error("lattice is not atomistic: `{0}` is not the join of its atoms")]
    NotAtomistic(String),
}

/// A lattice with an orthocomplementation `a ↦ a'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoLattice {
    lattice: FiniteLattice,
    ortho: Vec<Elem>,
}

/// Attaches an orthocomplementation given as pairs `(a, a')`. Each pair
/// declares both directions; every element must be covered exactly once.
pub fn attach_ortho<S: AsRef<str>>(lattice: FiniteLattice, pairs: &[(S, S)]) -> Result<OrthoLattice, OrthoError> {
    let mut table: Vec<Option<Elem>> = vec![None; lattice.len()];
    for (a, b) in pairs {
        let a = lattice.resolve(a.as_ref())?;
        let b = lattice.resolve(b.as_ref())?;
        for (x, y) in [(a, b), (b, a)] {
            match table[x.index()] {
                Some(prev) if prev != y => return Err(OrthoError::NotInvolution(lattice.name(x).to_owned())),
                _ => table[x.index()] = Some(y),
            }
        }
    }
    let table = table
        .iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| OrthoError::NotInvolution(lattice.names()[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    OrthoLattice::new(lattice, table)
}

impl OrthoLattice {
    /// Validates the three axioms: involution, antitone, `a ∧ a' = 0`.
    pub fn new(lattice: FiniteLattice, ortho: Vec<Elem>) -> Result<Self, OrthoError> {
        assert_eq!(ortho.len(), lattice.len());
        let o = |x: Elem| ortho[x.index()];
        for a in lattice.elements() {
            if o(o(a)) != a {
                return Err(OrthoError::NotInvolution(lattice.name(a).to_owned()));
            }
        }
        for a in lattice.elements() {
            for b in lattice.up(a).iter() {
                if !lattice.leq(o(b), o(a)) {
                    return Err(OrthoError::NotAntitone(
                        lattice.name(a).to_owned(),
                        lattice.name(b).to_owned(),
                    ));
                }
            }
        }
        for a in lattice.elements() {
            if lattice.meet(a, o(a)) != lattice.bottom() {
                return Err(OrthoError::ComplementLawFails(lattice.name(a).to_owned()));
            }
        }
        Ok(OrthoLattice { lattice, ortho })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> FiniteLattice {
        self.lattice
    }

    pub fn ortho(&self, a: Elem) -> Elem {
        self.ortho[a.index()]
    }

    pub fn ortho_table(&self) -> &[Elem] {
        &self.ortho
    }

    /// Pairs `(a, a')` with each unordered pair listed once.
    pub fn ortho_pairs(&self) -> Vec<(Elem, Elem)> {
        self.lattice
            .elements()
            .filter(|&a| a <= self.ortho(a))
            .map(|a| (a, self.ortho(a)))
            .collect()
    }

    /// First comparable pair `a <= b` with `b ≠ a ∨ (a' ∧ b)`.
    pub fn orthomodular_violation(&self) -> Option<(Elem, Elem)> {
        let l = &self.lattice;
        for a in l.elements() {
            for b in l.up(a).iter() {
                if l.join(a, l.meet(self.ortho(a), b)) != b {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_orthomodular(&self) -> bool {
        self.orthomodular_violation().is_none()
    }

    /// `(a ∨ b)' = a' ∧ b'`.
    pub fn de_morgan_violation(&self) -> Option<(Elem, Elem)> {
        let l = &self.lattice;
        l.elements()
            .flat_map(|a| l.elements().map(move |b| (a, b)))
            .find(|&(a, b)| self.ortho(l.join(a, b)) != l.meet(self.ortho(a), self.ortho(b)))
    }

    /// Sasaki hook `a →_S b = a' ∨ (a ∧ b)`.
    pub fn sasaki_hook(&self, a: Elem, b: Elem) -> Elem {
        let l = &self.lattice;
        l.join(self.ortho(a), l.meet(a, b))
    }

    /// Sasaki projection `φ_a(b) = a ∧ (a' ∨ b)`.
    pub fn sasaki_projection(&self, a: Elem, b: Elem) -> Elem {
        let l = &self.lattice;
        l.meet(a, l.join(self.ortho(a), b))
    }

    /// First `(c, b)` violating `φ_a(c) <= b ⟺ c <= a →_S b`.
    pub fn sasaki_adjunction_violation(&self, a: Elem) -> Option<(Elem, Elem)> {
        let l = &self.lattice;
        for c in l.elements() {
            for b in l.elements() {
                let lhs = l.leq(self.sasaki_projection(a, c), b);
                let rhs = l.leq(c, self.sasaki_hook(a, b));
                if lhs != rhs {
                    return Some((c, b));
                }
            }
        }
        None
    }

    /// Checks the Sasaki adjunction for every `a` and compares the outcome
    /// with orthomodularity.
    pub fn sasaki_report(&self) -> SasakiReport {
        let failures: Vec<(Elem, Elem, Elem)> = self
            .lattice
            .elements()
            .filter_map(|a| self.sasaki_adjunction_violation(a).map(|(c, b)| (a, c, b)))
            .collect();
        let orthomodular = self.orthomodular_violation();
        SasakiReport {
            adjunction_everywhere: failures.is_empty(),
            orthomodular: orthomodular.is_none(),
            failures,
            orthomodular_witness: orthomodular,
        }
    }

    /// Orthocomplementation axioms, De Morgan and orthomodularity as reports.
    pub fn laws(&self) -> LawSet {
        let l = &self.lattice;
        let mut set = LawSet::new();
        set.push(LawReport::pass("orthocomplementation"));
        set.push(LawReport::from_violation(
            "de morgan",
            self.de_morgan_violation(),
            |(a, b)| format!("a={}, b={}", l.name(a), l.name(b)),
        ));
        set.push(LawReport::from_violation(
            "orthomodular",
            self.orthomodular_violation(),
            |(a, b)| format!("a={}, b={}", l.name(a), l.name(b)),
        ));
        set
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SasakiReport {
    pub adjunction_everywhere: bool,
    pub orthomodular: bool,
    /// `(a, c, b)` triples where the adjunction fails, one per failing `a`.
    pub failures: Vec<(Elem, Elem, Elem)>,
    pub orthomodular_witness: Option<(Elem, Elem)>,
}

impl SasakiReport {
    /// The adjunction holds for all `a` exactly when the lattice is
    /// orthomodular.
    pub fn equivalence_holds(&self) -> bool {
        self.adjunction_everywhere == self.orthomodular
    }
}

/// Something that closes sets of states: the biorthogonal closure of a
/// [`StateSpace`] or an explicit closure system.
pub trait StateClosure {
    fn state_names(&self) -> &[String];

    fn closure(&self, set: StateSet) -> StateSet;

    fn all_states(&self) -> StateSet {
        ElemSet::full(self.state_names().len())
    }

    fn is_closed(&self, set: StateSet) -> bool {
        self.closure(set) == set
    }

    /// Closed sets ordered by size, then lexicographically.
    fn closed_sets(&self) -> Vec<StateSet> {
        let mut sets: Vec<StateSet> = self.all_states().subsets().filter(|&s| self.is_closed(s)).collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
        sets
    }

    /// Every singleton is closed.
    fn is_separating(&self) -> bool {
        self.all_states().iter().all(|s| self.is_closed(ElemSet::singleton(s)))
    }

    /// The lattice of closed sets ordered by inclusion. Singletons are named
    /// after their state, the empty set `0` and the full set `1`.
    fn closed_lattice(&self) -> Result<(FiniteLattice, Vec<StateSet>), LatticeError> {
        let sets = self.closed_sets();
        let names = sets
            .iter()
            .map(|&s| closed_set_name(self.state_names(), s, self.all_states()))
            .collect();
        let below = sets
            .iter()
            .map(|&b| {
                sets.iter()
                    .enumerate()
                    .filter(|(_, a)| a.is_subset(b))
                    .map(|(i, _)| Elem::new(i))
                    .collect()
            })
            .collect();
        Ok((FiniteLattice::from_relation(names, below)?, sets))
    }

    fn format_states(&self, set: StateSet) -> String {
        let parts: Vec<&str> = set.iter().map(|s| self.state_names()[s.index()].as_str()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn closed_set_name(states: &[String], set: StateSet, all: StateSet) -> String {
    if set.is_empty() {
        return "0".into();
    }
    if set == all && set.len() > 1 {
        return "1".into();
    }
    let parts: Vec<&str> = set.iter().map(|s| states[s.index()].as_str()).collect();
    if parts.iter().all(|p| p.chars().count() == 1) {
        parts.concat()
    } else {
        parts.join("_")
    }
}

const MAX_STATES: usize = 20;

fn index_states<S: AsRef<str>>(states: &[S]) -> Result<Vec<String>, OrthoError> {
    if states.len() > MAX_STATES.min(MAX_ELEMENTS) {
        return Err(OrthoError::TooManyStates(states.len(), MAX_STATES));
    }
    let mut names: Vec<String> = Vec::with_capacity(states.len());
    for s in states {
        if names.iter().any(|n| n == s.as_ref()) {
            return Err(OrthoError::DuplicateState(s.as_ref().to_owned()));
        }
        names.push(s.as_ref().to_owned());
    }
    Ok(names)
}

fn resolve_state(names: &[String], s: &str) -> Result<Elem, OrthoError> {
    names
        .iter()
        .position(|n| n == s)
        .map(Elem::new)
        .ok_or_else(|| OrthoError::UnknownState(s.to_owned()))
}

/// A finite state set with a symmetric, antireflexive orthogonality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    states: Vec<String>,
    /// `orth[x]` holds the states orthogonal to `x`.
    orth: Vec<StateSet>,
}

impl StateSpace {
    /// Orthogonal pairs are unordered; the relation is symmetrised.
    pub fn new<S: AsRef<str>>(states: &[S], orth_pairs: &[(S, S)]) -> Result<Self, OrthoError> {
        let states = index_states(states)?;
        let mut orth = vec![ElemSet::EMPTY; states.len()];
        for (a, b) in orth_pairs {
            let a = resolve_state(&states, a.as_ref())?;
            let b = resolve_state(&states, b.as_ref())?;
            if a == b {
                return Err(OrthoError::SelfOrthogonal(states[a.index()].clone()));
            }
            orth[a.index()].insert(b);
            orth[b.index()].insert(a);
        }
        Ok(StateSpace { states, orth })
    }

    pub fn orthogonal(&self, a: Elem, b: Elem) -> bool {
        self.orth[a.index()].contains(b)
    }

    /// Unordered orthogonal pairs, each listed once with the lower index first.
    pub fn orth_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.all_states().iter() {
            for b in self.orth[a.index()].iter().filter(|&b| b > a) {
                out.push((a, b));
            }
        }
        out
    }

    /// `A^⊥ = {y | ∀x ∈ A: x ⊥ y}`.
    pub fn perp(&self, set: StateSet) -> StateSet {
        set.iter().fold(self.all_states(), |acc, x| acc & self.orth[x.index()])
    }

    /// `A^⊥⊥`.
    pub fn biorthogonal(&self, set: StateSet) -> StateSet {
        self.perp(self.perp(set))
    }

    /// The orthocomplemented lattice of biorthogonal sets with `A ↦ A^⊥`.
    pub fn closed_subsets_lattice(&self) -> Result<(OrthoLattice, Vec<StateSet>), OrthoError> {
        let (lattice, sets) = self.closed_lattice()?;
        let ortho = sets
            .iter()
            .map(|&s| {
                let p = self.perp(s);
                Elem::new(sets.iter().position(|&t| t == p).expect("perp of a set is closed"))
            })
            .collect();
        Ok((OrthoLattice::new(lattice, ortho)?, sets))
    }
}

impl StateClosure for StateSpace {
    fn state_names(&self) -> &[String] {
        &self.states
    }

    fn closure(&self, set: StateSet) -> StateSet {
        self.biorthogonal(set)
    }
}

/// A state set with an explicitly listed family of closed sets.
///
/// Used where the closed sets are known but no orthogonality relation
/// produces them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureSpace {
    states: Vec<String>,
    closed: Vec<StateSet>,
}

impl ClosureSpace {
    /// The family must contain the full state set and be closed under
    /// binary intersection.
    pub fn new<S: AsRef<str>>(states: &[S], closed: &[Vec<S>]) -> Result<Self, OrthoError> {
        let states = index_states(states)?;
        let mut family: Vec<StateSet> = Vec::new();
        for set in closed {
            let s = set
                .iter()
                .map(|x| resolve_state(&states, x.as_ref()))
                .collect::<Result<StateSet, _>>()?;
            if !family.contains(&s) {
                family.push(s);
            }
        }
        let all = ElemSet::full(states.len());
        let fmt = |s: StateSet| {
            let parts: Vec<&str> = s.iter().map(|x| states[x.index()].as_str()).collect();
            format!("{{{}}}", parts.join(", "))
        };
        if !family.contains(&all) {
            return Err(OrthoError::NotClosureSystem("the full state set is not listed".into()));
        }
        for &a in &family {
            for &b in &family {
                if !family.contains(&(a & b)) {
                    return Err(OrthoError::NotClosureSystem(format!(
                        "{} ∩ {} is not listed",
                        fmt(a),
                        fmt(b)
                    )));
                }
            }
        }
        family.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
        Ok(ClosureSpace { states, closed: family })
    }

    pub fn family(&self) -> &[StateSet] {
        &self.closed
    }
}

impl StateClosure for ClosureSpace {
    fn state_names(&self) -> &[String] {
        &self.states
    }

    fn closure(&self, set: StateSet) -> StateSet {
        self.closed
            .iter()
            .filter(|c| set.is_subset(**c))
            .fold(self.all_states(), |acc, &c| acc & c)
    }

    fn closed_sets(&self) -> Vec<StateSet> {
        self.closed.clone()
    }
}

/// The Cartan map of an atomistic lattice, with states identified with atoms.
#[derive(Clone, Copy, Debug)]
pub struct Cartan<'a> {
    lattice: &'a FiniteLattice,
}

impl<'a> Cartan<'a> {
    pub fn new(lattice: &'a FiniteLattice) -> Result<Self, OrthoError> {
        match lattice.atomistic_violation() {
            Some(x) => Err(OrthoError::NotAtomistic(lattice.name(x).to_owned())),
            None => Ok(Cartan { lattice }),
        }
    }

    /// `μ(a)`: the atoms (states) in which `a` is actual.
    pub fn map(&self, a: Elem) -> ElemSet {
        self.lattice.atoms_below(a)
    }

    /// `p ▷ a`.
    pub fn forces(&self, p: Elem, a: Elem) -> bool {
        self.lattice.atoms().contains(p) && self.lattice.leq(p, a)
    }

    /// `S(p)`: every property actual in state `p`.
    pub fn actual_properties(&self, p: Elem) -> ElemSet {
        self.lattice.up(p)
    }

    pub fn injectivity_violation(&self) -> Option<(Elem, Elem)> {
        let l = self.lattice;
        l.elements()
            .flat_map(|a| l.elements().skip(a.index() + 1).map(move |b| (a, b)))
            .find(|&(a, b)| self.map(a) == self.map(b))
    }

    /// `μ(⋀A) = ⋂ μ[A]`. Binary meets and the empty meet generate all
    /// finite meets, so those are checked.
    pub fn meet_continuity_violation(&self) -> Option<ElemSet> {
        let l = self.lattice;
        if self.map(l.top()) != l.atoms() {
            return Some(ElemSet::EMPTY);
        }
        for a in l.elements() {
            for b in l.elements().skip(a.index() + 1) {
                if self.map(l.meet(a, b)) != self.map(a) & self.map(b) {
                    return Some(ElemSet::singleton(a).with(b));
                }
            }
        }
        None
    }
}
