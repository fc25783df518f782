//! Distributive ideals and the complete Heyting algebra `DI(L)`.
//!
//! A property set is a non-empty down-set of `L` that contains the join of
//! every subset whose join distributes over all meets. `DI(L)` is enumerated
//! once per lattice; the closure of an arbitrary element set is then the
//! intersection of the enumerated ideals that contain it.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::order::{FiniteLattice, LatticeError};
use crate::report::{LawReport, LawSet};
use crate::set::{Elem, ElemSet};
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error("lattice is not atomistic: `{0}` is not the join of its atoms")]
    NotAtomistic(String),
    #[error("{0} is not a distributive ideal: {1}")]
    NotAnIdeal(String, String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A distributive ideal of a lattice (an element of `DI(L)`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PropertySet(ElemSet);

impl PropertySet {
    pub fn members(self) -> ElemSet {
        self.0
    }

    pub fn contains(self, e: Elem) -> bool {
        self.0.contains(e)
    }

    pub fn is_subset(self, other: PropertySet) -> bool {
        self.0.is_subset(other.0)
    }
}

impl fmt::Debug for PropertySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PropertySet{:?}", self.0)
    }
}

/// Why a set of elements fails to be a distributive ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealViolation {
    Empty,
    /// `below <= above`, `above` in the set, `below` not.
    NotDownClosed {
        below: Elem,
        above: Elem,
    },
    /// `subset` has a distributive join `join` that is missing.
    MissingJoin {
        subset: ElemSet,
        join: Elem,
    },
}

/// Checks both property-set invariants.
///
/// If some distributive subset of `set` joins to `x`, then so does the
/// larger `set ∩ ↓x` (enlarging a family below its join keeps the
/// distributive identity), so one subset per missing element suffices.
pub fn property_set_violation(lattice: &FiniteLattice, set: ElemSet) -> Option<IdealViolation> {
    if set.is_empty() {
        return Some(IdealViolation::Empty);
    }
    for above in set.iter() {
        if let Some(below) = lattice.down(above).difference(set).first() {
            return Some(IdealViolation::NotDownClosed { below, above });
        }
    }
    missing_distributive_join(lattice, set).map(|(subset, join)| IdealViolation::MissingJoin { subset, join })
}

fn missing_distributive_join(lattice: &FiniteLattice, set: ElemSet) -> Option<(ElemSet, Elem)> {
    lattice
        .all()
        .difference(set)
        .iter()
        .map(|x| (set & lattice.down(x), x))
        .find(|&(sub, x)| lattice.join_set(sub) == x && lattice.is_distributive_join(sub))
}

pub fn is_property_set(lattice: &FiniteLattice, set: ElemSet) -> bool {
    property_set_violation(lattice, set).is_none()
}

/// Smallest distributive ideal containing `set`, by saturation: down-close,
/// then add every element that is a distributive join of the elements
/// below it, until stable.
pub fn closure_fixpoint(lattice: &FiniteLattice, set: ElemSet) -> ElemSet {
    let mut ideal = lattice.down_closure(set.with(lattice.bottom()));
    while let Some((_, x)) = missing_distributive_join(lattice, ideal) {
        ideal = ideal | lattice.down(x);
    }
    ideal
}

/// `DI(L)` together with its parent lattice.
#[derive(Clone, Debug)]
pub struct DiLattice {
    lattice: FiniteLattice,
    /// Sorted by [`ElemSet::lex_cmp`].
    ideals: Vec<PropertySet>,
    index: HashMap<PropertySet, usize>,
}

impl PartialEq for DiLattice {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
    }
}

/// Enumerates every distributive ideal of `lattice`.
///
/// Lattices up to `caps.di_lattice_size` elements are searched through all
/// down-sets. Larger atomistic lattices with at most `caps.di_atoms` atoms
/// are enumerated as closures of atom sets. Anything else is refused.
pub fn enumerate_di(lattice: &FiniteLattice, caps: &Caps) -> Result<DiLattice, IdealError> {
    let n = lattice.len();
    let mut found: Vec<ElemSet> = if n <= caps.di_lattice_size {
        down_sets(lattice)
            .into_iter()
            .filter(|&s| missing_distributive_join(lattice, s).is_none())
            .collect()
    } else if lattice.is_atomistic() && lattice.atoms().len() <= caps.di_atoms {
        let mut v: Vec<ElemSet> = lattice
            .atoms()
            .subsets()
            .map(|s| closure_fixpoint(lattice, s))
            .collect();
        v.sort_by_key(|s| s.bits());
        v.dedup();
        v
    } else {
        return Err(IdealError::SizeCapExceeded(format!(
            "distributive ideals of a {n}-element lattice with {} atoms (caps: {} elements, {} atoms if atomistic)",
            lattice.atoms().len(),
            caps.di_lattice_size,
            caps.di_atoms
        )));
    };
    found.sort_by(|a, b| a.lex_cmp(*b));
    let ideals: Vec<PropertySet> = found.into_iter().map(PropertySet).collect();
    let index = ideals.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    Ok(DiLattice {
        lattice: lattice.clone(),
        ideals,
        index,
    })
}

/// All non-empty down-sets (each contains bottom).
fn down_sets(lattice: &FiniteLattice) -> Vec<ElemSet> {
    let mut order: Vec<Elem> = lattice.elements().collect();
    order.sort_by_key(|&x| (lattice.down(x).len(), x));
    let mut out = Vec::new();
    // Explicit stack of (position, partial down-set).
    let mut stack = vec![(1usize, ElemSet::singleton(order[0]))];
    while let Some((pos, cur)) = stack.pop() {
        if pos == order.len() {
            out.push(cur);
            continue;
        }
        let x = order[pos];
        stack.push((pos + 1, cur));
        let strict = lattice.down(x).difference(ElemSet::singleton(x));
        if strict.is_subset(cur) {
            stack.push((pos + 1, cur.with(x)));
        }
    }
    out
}

/// The distributive ideal generated by `set`.
pub fn di_closure(lattice: &FiniteLattice, set: ElemSet, caps: &Caps) -> Result<PropertySet, IdealError> {
    Ok(enumerate_di(lattice, caps)?.closure(set))
}

impl DiLattice {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[PropertySet] {
        &self.ideals
    }

    pub fn get(&self, i: usize) -> PropertySet {
        self.ideals[i]
    }

    pub fn index_of(&self, p: PropertySet) -> usize {
        self.index[&p]
    }

    /// Wraps `set` if it is one of the enumerated ideals.
    pub fn ideal(&self, set: ElemSet) -> Option<PropertySet> {
        let p = PropertySet(set);
        self.index.contains_key(&p).then_some(p)
    }

    /// Intersection of all distributive ideals containing `set`.
    pub fn closure(&self, set: ElemSet) -> PropertySet {
        let members = self
            .ideals
            .iter()
            .filter(|i| set.is_subset(i.0))
            .fold(self.lattice.all(), |acc, i| acc & i.0);
        PropertySet(members)
    }

    /// The whole lattice.
    pub fn top(&self) -> PropertySet {
        PropertySet(self.lattice.all())
    }

    /// A property set is valid when it is the whole lattice.
    pub fn validity(&self, a: PropertySet) -> bool {
        a == self.top()
    }

    /// `↓0`.
    pub fn bottom(&self) -> PropertySet {
        PropertySet(ElemSet::singleton(self.lattice.bottom()))
    }

    /// `↓a`.
    pub fn principal(&self, a: Elem) -> PropertySet {
        PropertySet(self.lattice.down(a))
    }

    pub fn meet(&self, a: PropertySet, b: PropertySet) -> PropertySet {
        PropertySet(a.0 & b.0)
    }

    pub fn join(&self, a: PropertySet, b: PropertySet) -> PropertySet {
        self.closure(a.0 | b.0)
    }

    pub fn join_all(&self, family: impl IntoIterator<Item = PropertySet>) -> PropertySet {
        let union = family.into_iter().fold(ElemSet::EMPTY, |acc, p| acc | p.0);
        self.closure(union)
    }

    pub fn meet_all(&self, family: impl IntoIterator<Item = PropertySet>) -> PropertySet {
        PropertySet(family.into_iter().fold(self.lattice.all(), |acc, p| acc & p.0))
    }

    /// `B →_DI C = {a | ∀b ∈ B: a ∧ b ∈ C}`.
    pub fn implies(&self, b: PropertySet, c: PropertySet) -> PropertySet {
        let l = &self.lattice;
        PropertySet(
            l.elements()
                .filter(|&a| b.0.iter().all(|x| c.0.contains(l.meet(a, x))))
                .collect(),
        )
    }

    /// Heyting pseudo-complement `A →_DI ↓0`.
    pub fn negation(&self, a: PropertySet) -> PropertySet {
        self.implies(a, self.bottom())
    }

    /// `R(A) = ↓(⋁_L A)`.
    pub fn resolution(&self, a: PropertySet) -> PropertySet {
        self.principal(self.lattice.join_set(a.0))
    }

    /// The lattice join of a property set: the strongest property that is
    /// certainly actual.
    pub fn resolve(&self, a: PropertySet) -> Elem {
        self.lattice.join_set(a.0)
    }

    pub fn format(&self, a: PropertySet) -> String {
        self.lattice.format_set(a.0)
    }

    /// `I ↦ I ∩ atoms`.
    pub fn atom_view(&self, a: PropertySet) -> ElemSet {
        a.0 & self.lattice.atoms()
    }

    /// Inverse of [`atom_view`](Self::atom_view) on atomistic lattices.
    pub fn from_atoms(&self, atoms: ElemSet) -> PropertySet {
        self.closure(atoms)
    }

    /// Verifies that `I ↦ I ∩ atoms` is an order isomorphism onto the
    /// powerset of atoms, with inverse `S ↦ C(S)`.
    pub fn atom_iso_violation(&self) -> Result<Option<String>, IdealError> {
        let l = &self.lattice;
        if let Some(x) = l.atomistic_violation() {
            return Err(IdealError::NotAtomistic(l.name(x).to_owned()));
        }
        let atoms = l.atoms();
        if self.len() != 1usize << atoms.len() {
            return Ok(Some(format!(
                "{} ideals but {} atom sets",
                self.len(),
                1usize << atoms.len()
            )));
        }
        for s in atoms.subsets() {
            let back = self.from_atoms(s);
            if self.atom_view(back) != s {
                return Ok(Some(format!("atom set {} does not round-trip", l.format_set(s))));
            }
        }
        for &i in &self.ideals {
            if self.from_atoms(self.atom_view(i)) != i {
                return Ok(Some(format!("ideal {} does not round-trip", self.format(i))));
            }
        }
        for &i in &self.ideals {
            for &j in &self.ideals {
                if i.is_subset(j) != self.atom_view(i).is_subset(self.atom_view(j)) {
                    return Ok(Some(format!(
                        "order not reflected between {} and {}",
                        self.format(i),
                        self.format(j)
                    )));
                }
            }
        }
        Ok(None)
    }

    /// The first ideal without a complement in `DI(L)`.
    pub fn boolean_violation(&self) -> Option<PropertySet> {
        let (top, bottom) = (self.top(), self.bottom());
        self.ideals.iter().copied().find(|&a| {
            !self
                .ideals
                .iter()
                .any(|&b| self.meet(a, b) == bottom && self.join(a, b) == top)
        })
    }

    /// `DI(L)` as a [`FiniteLattice`] whose elements are named by their
    /// member sets. Fails if it has more than 64 ideals.
    pub fn as_lattice(&self) -> Result<FiniteLattice, LatticeError> {
        if self.len() > crate::set::MAX_ELEMENTS {
            return Err(LatticeError::TooLarge {
                size: self.len(),
                cap: crate::set::MAX_ELEMENTS,
            });
        }
        let names = self.ideals.iter().map(|&i| self.format(i)).collect();
        let below = self
            .ideals
            .iter()
            .map(|&b| {
                self.ideals
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.is_subset(b))
                    .map(|(k, _)| Elem::new(k))
                    .collect()
            })
            .collect();
        FiniteLattice::from_relation(names, below)
    }

    fn index_tables(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        let mut imp = vec![0; n * n];
        for (i, &a) in self.ideals.iter().enumerate() {
            for (j, &b) in self.ideals.iter().enumerate() {
                meet[i * n + j] = self.index_of(self.meet(a, b));
                join[i * n + j] = self.index_of(self.join(a, b));
                imp[i * n + j] = self.index_of(self.implies(a, b));
            }
        }
        (meet, join, imp)
    }

    /// Heyting-algebra laws checked over every pair or triple of ideals.
    ///
    /// Binary meets distributing over binary joins (and the empty join,
    /// trivially) is the finite form of meets distributing over arbitrary
    /// joins.
    pub fn heyting_laws(&self, caps: &Caps) -> Result<LawSet, IdealError> {
        let n = self.len();
        if n > caps.law_check_ideals {
            return Err(IdealError::SizeCapExceeded(format!(
                "{n} ideals exceed the law-check cap of {}",
                caps.law_check_ideals
            )));
        }
        let (meet, join, imp) = self.index_tables();
        let fmt = |i: usize| self.format(self.ideals[i]);
        let leq = |i: usize, j: usize| self.ideals[i].is_subset(self.ideals[j]);
        let top = self.index_of(self.top());

        let mut adjunction = None;
        let mut distributive = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if adjunction.is_none() && leq(meet[a * n + b], c) != leq(b, imp[a * n + c]) {
                        adjunction = Some((a, b, c));
                    }
                    if distributive.is_none()
                        && meet[a * n + join[b * n + c]] != join[meet[a * n + b] * n + meet[a * n + c]]
                    {
                        distributive = Some((a, b, c));
                    }
                    if adjunction.is_some() && distributive.is_some() {
                        break 'outer;
                    }
                }
            }
        }
        let entailment = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| (imp[a * n + b] == top) != leq(a, b));

        let triple = |(a, b, c): (usize, usize, usize)| format!("A={}, B={}, C={}", fmt(a), fmt(b), fmt(c));
        let mut set = LawSet::new();
        set.push(LawReport::from_violation(
            "heyting adjunction (A ∧ -) ⊣ (A → -)",
            adjunction,
            triple,
        ));
        set.push(LawReport::from_violation(
            "strengthened entailment (A → B) = L ⟺ A ⊆ B",
            entailment,
            |(a, b)| format!("A={}, B={}", fmt(a), fmt(b)),
        ));
        set.push(LawReport::from_violation(
            "meet distributes over join",
            distributive,
            triple,
        ));
        set.push(LawReport::from_violation(
            "enumerated ideals are exactly the closure fixed points",
            self.fixed_point_violation(),
            |w| w,
        ));
        set.push(LawReport::from_violation(
            "principal embedding preserves meets and distributive joins",
            self.embedding_violation(),
            |w| w,
        ));
        Ok(set)
    }

    /// Every enumerated ideal is closed and valid; every closure result is
    /// enumerated.
    pub fn fixed_point_violation(&self) -> Option<String> {
        for &i in &self.ideals {
            if let Some(v) = property_set_violation(&self.lattice, i.0) {
                return Some(format!("{} is invalid: {v:?}", self.format(i)));
            }
            if self.closure(i.0) != i {
                return Some(format!("{} is not a closure fixed point", self.format(i)));
            }
        }
        for a in self.lattice.elements() {
            for b in self.lattice.elements() {
                let c = self.closure(ElemSet::singleton(a).with(b));
                if !self.index.contains_key(&c) {
                    return Some(format!("closure {} is not enumerated", self.format(c)));
                }
            }
        }
        None
    }

    /// `a ↦ ↓a` preserves binary meets and the joins of distributive pairs.
    pub fn embedding_violation(&self) -> Option<String> {
        let l = &self.lattice;
        for a in l.elements() {
            for b in l.elements() {
                let (pa, pb) = (self.principal(a), self.principal(b));
                if self.principal(l.meet(a, b)) != self.meet(pa, pb) {
                    return Some(format!("meet of {} and {}", l.name(a), l.name(b)));
                }
                let pair = ElemSet::singleton(a).with(b);
                if l.is_distributive_join(pair) && self.principal(l.join(a, b)) != self.join(pa, pb) {
                    return Some(format!("distributive join of {} and {}", l.name(a), l.name(b)));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::build_lattice;

    fn photon() -> FiniteLattice {
        let els = ["0", "a", "b", "a'", "b'", "1"];
        let mut pairs = Vec::new();
        for x in ["a", "b", "a'", "b'"] {
            pairs.push(("0", x));
            pairs.push((x, "1"));
        }
        build_lattice(&els, &pairs).unwrap()
    }

    fn boolean2() -> FiniteLattice {
        build_lattice(&["0", "x", "y", "1"], &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")]).unwrap()
    }

    fn chain3() -> FiniteLattice {
        build_lattice(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap()
    }

    fn s(l: &FiniteLattice, names: &[&str]) -> ElemSet {
        l.resolve_set(names).unwrap()
    }

    #[test]
    fn closure_examples() {
        let caps = Caps::default();
        let l = photon();
        assert_eq!(
            di_closure(&l, s(&l, &["a"]), &caps).unwrap().members(),
            s(&l, &["0", "a"])
        );
        assert_eq!(
            di_closure(&l, s(&l, &["a", "b"]), &caps).unwrap().members(),
            s(&l, &["0", "a", "b"])
        );
        let b = boolean2();
        assert_eq!(di_closure(&b, s(&b, &["x", "y"]), &caps).unwrap().members(), b.all());
    }

    #[test]
    fn enumeration_sizes() {
        let caps = Caps::default();
        let di = enumerate_di(&photon(), &caps).unwrap();
        assert_eq!(di.len(), 16);
        assert_eq!(di.boolean_violation(), None);
        assert_eq!(di.atom_iso_violation().unwrap(), None);

        let c = chain3();
        let di = enumerate_di(&c, &caps).unwrap();
        let expected: Vec<ElemSet> = c.elements().map(|x| c.down(x)).collect();
        assert_eq!(di.ideals().iter().map(|p| p.members()).collect::<Vec<_>>(), expected);
        assert!(matches!(di.atom_iso_violation(), Err(IdealError::NotAtomistic(_))));

        let one = build_lattice::<&str>(&["0"], &[]).unwrap();
        assert_eq!(enumerate_di(&one, &caps).unwrap().len(), 1);
    }

    #[test]
    fn fixpoint_matches_enumeration_on_photon() {
        let caps = Caps::default();
        let l = photon();
        let di = enumerate_di(&l, &caps).unwrap();
        for set in l.all().subsets() {
            assert_eq!(closure_fixpoint(&l, set), di.closure(set).members());
        }
    }

    #[test]
    fn heyting_examples() {
        let caps = Caps::default();
        let l = photon();
        let di = enumerate_di(&l, &caps).unwrap();
        let e = |n| l.elem(n).unwrap();
        let (pa, pb) = (di.principal(e("a")), di.principal(e("b")));
        assert_eq!(di.implies(pa, pa), di.top());
        assert_eq!(di.implies(pa, pb).members(), s(&l, &["0", "b", "a'", "b'"]));
        assert_eq!(di.negation(pa).members(), s(&l, &["0", "b", "a'", "b'"]));
        assert_eq!(di.negation(di.top()), di.bottom());
        assert_eq!(di.negation(di.bottom()), di.top());

        let b = boolean2();
        let bdi = enumerate_di(&b, &caps).unwrap();
        let x = bdi.principal(b.elem("x").unwrap());
        assert_eq!(bdi.implies(x, bdi.bottom()), bdi.principal(b.elem("y").unwrap()));
    }

    #[test]
    fn resolution_examples() {
        let caps = Caps::default();
        let l = photon();
        let di = enumerate_di(&l, &caps).unwrap();
        let ab = di.ideal(s(&l, &["0", "a", "b"])).unwrap();
        assert_eq!(di.resolution(ab), di.top());
        let pa = di.principal(l.elem("a").unwrap());
        assert_eq!(di.resolution(pa), pa);
        let b = boolean2();
        let bdi = enumerate_di(&b, &caps).unwrap();
        for &i in bdi.ideals() {
            assert_eq!(bdi.resolution(i), i);
        }
    }

    #[test]
    fn atom_view_examples() {
        let caps = Caps::default();
        let l = photon();
        let di = enumerate_di(&l, &caps).unwrap();
        let ab = di.ideal(s(&l, &["0", "a", "b"])).unwrap();
        assert_eq!(di.atom_view(ab), s(&l, &["a", "b"]));
        assert_eq!(di.atom_view(di.top()), l.atoms());
        assert_eq!(di.atom_view(di.bottom()), ElemSet::EMPTY);
    }

    #[test]
    fn violations_are_reported() {
        let l = photon();
        assert_eq!(property_set_violation(&l, ElemSet::EMPTY), Some(IdealViolation::Empty));
        assert!(matches!(
            property_set_violation(&l, s(&l, &["a"])),
            Some(IdealViolation::NotDownClosed { .. })
        ));
        let b = boolean2();
        assert_eq!(
            property_set_violation(&b, s(&b, &["0", "x", "y"])),
            Some(IdealViolation::MissingJoin {
                subset: s(&b, &["0", "x", "y"]),
                join: b.top()
            })
        );
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps {
            di_lattice_size: 3,
            di_atoms: 1,
            ..Caps::default()
        };
        assert!(matches!(
            enumerate_di(&photon(), &caps),
            Err(IdealError::SizeCapExceeded(_))
        ));
        let caps = Caps {
            di_lattice_size: 3,
            ..Caps::default()
        };
        // Atomistic route.
        assert_eq!(enumerate_di(&photon(), &caps).unwrap().len(), 16);
    }

    #[test]
    fn heyting_laws_hold_on_photon() {
        let caps = Caps::default();
        let di = enumerate_di(&photon(), &caps).unwrap();
        let laws = di.heyting_laws(&caps).unwrap();
        assert!(laws.holds(), "{laws:?}");
    }
}
