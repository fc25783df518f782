//! Finite posets and lattices.
//!
//! A [`FiniteLattice`] is built from an element list and an arbitrary set of
//! order pairs. The reflexive-transitive closure is computed, antisymmetry
//! is checked, and binary meets and joins are tabulated once, so every later
//! lattice operation is a table lookup.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::set::{Elem, ElemSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("{size} elements exceed the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("order is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAPoset(String, String),
    #[error("`{a}` and `{b}` have no {missing}")]
    NotALattice { a: String, b: String, missing: Bound },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    GreatestLowerBound,
    LeastUpperBound,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::GreatestLowerBound => "greatest lower bound",
            Bound::LeastUpperBound => "least upper bound",
        })
    }
}

/// A finite lattice with dense meet and join tables.
#[derive(Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    /// `down[x]` is `{y | y <= x}`.
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    atoms: ElemSet,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.down == other.down
    }
}

impl Eq for FiniteLattice {}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("elements", &self.names)
            .finish_non_exhaustive()
    }
}

/// Builds a lattice from element names and order pairs `(a, b)` meaning
/// `a <= b`. Cover relations suffice; the closure is computed here.
pub fn build_lattice<S: AsRef<str>>(elements: &[S], order_pairs: &[(S, S)]) -> Result<FiniteLattice, LatticeError> {
    let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
    let index = index_names(&names)?;
    let lookup = |s: &S| {
        index
            .get(s.as_ref())
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(s.as_ref().to_owned()))
    };
    let mut below = vec![ElemSet::EMPTY; names.len()];
    for (a, b) in order_pairs {
        let (a, b) = (lookup(a)?, lookup(b)?);
        below[b.index()].insert(a);
    }
    FiniteLattice::from_relation(names, below)
}

fn index_names(names: &[String]) -> Result<HashMap<String, Elem>, LatticeError> {
    if names.is_empty() {
        return Err(LatticeError::Empty);
    }
    if names.len() > MAX_ELEMENTS {
        return Err(LatticeError::TooLarge {
            size: names.len(),
            cap: MAX_ELEMENTS,
        });
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), Elem::new(i)).is_some() {
            return Err(LatticeError::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

impl FiniteLattice {
    /// Builds a lattice from a relation given as "strictly or non-strictly
    /// below" sets: `below[x]` holds elements declared `<= x`.
    pub fn from_relation(names: Vec<String>, below: Vec<ElemSet>) -> Result<Self, LatticeError> {
        let index = index_names(&names)?;
        let n = names.len();
        assert_eq!(below.len(), n);

        // Reflexive-transitive closure (Warshall on bit rows).
        let mut down = below;
        for (x, row) in down.iter_mut().enumerate() {
            row.insert(Elem::new(x));
        }
        for k in 0..n {
            let dk = down[k];
            let ek = Elem::new(k);
            for row in down.iter_mut() {
                if row.contains(ek) {
                    *row = row.union(dk);
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if down[b].contains(Elem::new(a)) && down[a].contains(Elem::new(b)) {
                    return Err(LatticeError::NotAPoset(names[a].clone(), names[b].clone()));
                }
            }
        }
        let mut up = vec![ElemSet::EMPTY; n];
        for (x, row) in down.iter().enumerate() {
            for y in row.iter() {
                up[y.index()].insert(Elem::new(x));
            }
        }

        let mut meet = vec![Elem::new(0); n * n];
        let mut join = vec![Elem::new(0); n * n];
        for a in 0..n {
            for b in a..n {
                let lower = down[a] & down[b];
                let glb = lower.iter().find(|g| lower.is_subset(down[g.index()]));
                let upper = up[a] & up[b];
                let lub = upper.iter().find(|l| upper.is_subset(up[l.index()]));
                let missing = |bound| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    missing: bound,
                };
                let glb = glb.ok_or_else(|| missing(Bound::GreatestLowerBound))?;
                let lub = lub.ok_or_else(|| missing(Bound::LeastUpperBound))?;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
            }
        }

        // With all binary bounds present, fold to the global extremes.
        let all = ElemSet::full(n);
        let bottom = all
            .iter()
            .find(|x| up[x.index()] == all)
            .expect("finite lattice has a bottom");
        let top = all
            .iter()
            .find(|x| down[x.index()] == all)
            .expect("finite lattice has a top");
        let atoms = all
            .iter()
            .filter(|&x| x != bottom && down[x.index()].len() == 2)
            .collect();

        Ok(FiniteLattice {
            names,
            index,
            down,
            up,
            meet,
            join,
            bottom,
            top,
            atoms,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    /// Looks an element up by name.
    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn resolve(&self, name: &str) -> Result<Elem, LatticeError> {
        self.elem(name)
            .ok_or_else(|| LatticeError::UnknownElement(name.to_owned()))
    }

    pub fn resolve_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet, LatticeError> {
        names.iter().map(|n| self.resolve(n.as_ref())).collect()
    }

    /// Every element, in declaration order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(Elem::new)
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.down[b.index()].contains(a)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.len() + b.index()]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.len() + b.index()]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// `{y | y <= x}`.
    pub fn down(&self, x: Elem) -> ElemSet {
        self.down[x.index()]
    }

    /// `{y | x <= y}`.
    pub fn up(&self, x: Elem) -> ElemSet {
        self.up[x.index()]
    }

    /// Down-closure of a set.
    pub fn down_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc | self.down(x))
    }

    pub fn is_down_closed(&self, set: ElemSet) -> bool {
        self.down_closure(set) == set
    }

    /// Greatest lower bound of a set; the empty meet is top.
    pub fn meet_set(&self, set: ElemSet) -> Elem {
        set.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Least upper bound of a set; the empty join is bottom.
    pub fn join_set(&self, set: ElemSet) -> Elem {
        set.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Common upper bounds of a set.
    pub fn upper_bounds(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(self.all(), |acc, x| acc & self.up(x))
    }

    pub fn lower_bounds(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(self.all(), |acc, x| acc & self.down(x))
    }

    /// Minimal non-bottom elements.
    pub fn atoms(&self) -> ElemSet {
        self.atoms
    }

    /// Atoms below `x`.
    pub fn atoms_below(&self, x: Elem) -> ElemSet {
        self.down(x) & self.atoms
    }

    /// True iff every element is the join of the atoms below it.
    pub fn is_atomistic(&self) -> bool {
        self.atomistic_violation().is_none()
    }

    /// First element that is not the join of its atoms.
    pub fn atomistic_violation(&self) -> Option<Elem> {
        self.elements().find(|&x| self.join_set(self.atoms_below(x)) != x)
    }

    /// Whether `b ∧ ⋁A = ⋁{b ∧ a | a ∈ A}` holds for every `b`.
    pub fn is_distributive_join(&self, set: ElemSet) -> bool {
        self.distributive_join_violation(set).is_none()
    }

    /// The first `b` for which the join of `set` fails to distribute.
    pub fn distributive_join_violation(&self, set: ElemSet) -> Option<Elem> {
        let j = self.join_set(set);
        self.elements().find(|&b| {
            let spread = set.iter().fold(self.bottom, |acc, a| self.join(acc, self.meet(b, a)));
            self.meet(b, j) != spread
        })
    }

    /// Distributivity of the whole lattice: `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_violation(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_violation().is_none()
    }

    /// Pairs `(a, b)` where `b` covers `a`.
    pub fn cover_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for b in self.elements() {
            let strict = self.down(b).difference(ElemSet::singleton(b));
            for a in strict.iter() {
                let between = strict & self.up(a);
                if between.len() == 1 {
                    out.push((a, b));
                }
            }
        }
        out.sort_by_key(|&(a, b)| (a, b));
        out
    }

    /// Formats a set of elements as `{x, y}` in element order.
    pub fn format_set(&self, set: ElemSet) -> String {
        let parts: Vec<&str> = set.iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// A map between two finite lattices given by its table.
///
/// Monotonicity is checked by [`MonotoneMap::new`]; the preservation checks
/// are also exposed as free functions on raw tables so they apply to maps
/// that are not monotone at all, such as an orthocomplementation.
#[derive(Clone, Debug)]
pub struct MonotoneMap<'a> {
    source: &'a FiniteLattice,
    target: &'a FiniteLattice,
    table: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("table has {got} entries, source has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("image index out of range for the target lattice")]
    OutOfRange,
    #[error("map is not monotone: {0:?} <= {1:?} but images are not ordered")]
    NotMonotone(Elem, Elem),
    #[error("map does not preserve the join of {0:?}")]
    NotJoinPreserving(ElemSet),
    #[error("map does not preserve the meet of {0:?}")]
    NotMeetPreserving(ElemSet),
}

impl<'a> MonotoneMap<'a> {
    pub fn new(source: &'a FiniteLattice, target: &'a FiniteLattice, table: Vec<Elem>) -> Result<Self, MapError> {
        if table.len() != source.len() {
            return Err(MapError::WrongLength {
                expected: source.len(),
                got: table.len(),
            });
        }
        if table.iter().any(|e| e.index() >= target.len()) {
            return Err(MapError::OutOfRange);
        }
        if let Some((a, b)) = monotonicity_violation(source, target, &table) {
            return Err(MapError::NotMonotone(a, b));
        }
        Ok(MonotoneMap { source, target, table })
    }

    pub fn identity(lattice: &'a FiniteLattice) -> Self {
        MonotoneMap {
            source: lattice,
            target: lattice,
            table: lattice.elements().collect(),
        }
    }

    pub fn source(&self) -> &'a FiniteLattice {
        self.source
    }

    pub fn target(&self) -> &'a FiniteLattice {
        self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a.index()]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn is_join_preserving(&self) -> bool {
        join_preservation_violation(self.source, self.target, &self.table).is_none()
    }

    pub fn is_meet_preserving(&self) -> bool {
        meet_preservation_violation(self.source, self.target, &self.table).is_none()
    }

    /// `f_*(b) = ⋁{a | f(a) <= b}`, for join-preserving `f`.
    pub fn right_adjoint(&self) -> Result<MonotoneMap<'a>, MapError> {
        if let Some(w) = join_preservation_violation(self.source, self.target, &self.table) {
            return Err(MapError::NotJoinPreserving(w));
        }
        let table = self
            .target
            .elements()
            .map(|b| {
                let pre: ElemSet = self
                    .source
                    .elements()
                    .filter(|&a| self.target.leq(self.apply(a), b))
                    .collect();
                self.source.join_set(pre)
            })
            .collect();
        Ok(MonotoneMap {
            source: self.target,
            target: self.source,
            table,
        })
    }

    /// `g^*(a) = ⋀{b | a <= g(b)}`, for meet-preserving `g`.
    pub fn left_adjoint(&self) -> Result<MonotoneMap<'a>, MapError> {
        if let Some(w) = meet_preservation_violation(self.source, self.target, &self.table) {
            return Err(MapError::NotMeetPreserving(w));
        }
        let table = self
            .target
            .elements()
            .map(|a| {
                let pre: ElemSet = self
                    .source
                    .elements()
                    .filter(|&b| self.target.leq(a, self.apply(b)))
                    .collect();
                self.source.meet_set(pre)
            })
            .collect();
        Ok(MonotoneMap {
            source: self.target,
            target: self.source,
            table,
        })
    }

    /// First pair `(a, b)` violating `f(a) <= b ⟺ a <= g(b)` for `g = other`.
    pub fn adjunction_violation(&self, right: &MonotoneMap<'_>) -> Option<(Elem, Elem)> {
        adjunction_violation(self.source, self.target, &self.table, &right.table)
    }
}

/// First pair `a <= b` whose images are not ordered.
pub fn monotonicity_violation(source: &FiniteLattice, target: &FiniteLattice, table: &[Elem]) -> Option<(Elem, Elem)> {
    for a in source.elements() {
        for b in source.up(a).iter() {
            if !target.leq(table[a.index()], table[b.index()]) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Finite joins are generated by the empty join and binary joins, so those
/// are the only cases examined. The witness is the offending subset.
pub fn join_preservation_violation(source: &FiniteLattice, target: &FiniteLattice, table: &[Elem]) -> Option<ElemSet> {
    let f = |x: Elem| table[x.index()];
    if f(source.bottom()) != target.bottom() {
        return Some(ElemSet::EMPTY);
    }
    for a in source.elements() {
        for b in source.elements().skip(a.index() + 1) {
            if f(source.join(a, b)) != target.join(f(a), f(b)) {
                return Some(ElemSet::singleton(a).with(b));
            }
        }
    }
    None
}

pub fn meet_preservation_violation(source: &FiniteLattice, target: &FiniteLattice, table: &[Elem]) -> Option<ElemSet> {
    let f = |x: Elem| table[x.index()];
    if f(source.top()) != target.top() {
        return Some(ElemSet::EMPTY);
    }
    for a in source.elements() {
        for b in source.elements().skip(a.index() + 1) {
            if f(source.meet(a, b)) != target.meet(f(a), f(b)) {
                return Some(ElemSet::singleton(a).with(b));
            }
        }
    }
    None
}

/// Checks `left(a) <= b ⟺ a <= right(b)` for every `a` in `source` and `b`
/// in `target`.
pub fn adjunction_violation(
    source: &FiniteLattice,
    target: &FiniteLattice,
    left: &[Elem],
    right: &[Elem],
) -> Option<(Elem, Elem)> {
    for a in source.elements() {
        for b in target.elements() {
            let l = target.leq(left[a.index()], b);
            let r = source.leq(a, right[b.index()]);
            if l != r {
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn photon() -> FiniteLattice {
        let els = ["0", "a", "b", "a'", "b'", "1"];
        let mut pairs = Vec::new();
        for x in ["a", "b", "a'", "b'"] {
            pairs.push(("0", x));
            pairs.push((x, "1"));
        }
        build_lattice(&els, &pairs).unwrap()
    }

    fn chain3() -> FiniteLattice {
        build_lattice(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap()
    }

    fn boolean2() -> FiniteLattice {
        build_lattice(&["0", "x", "y", "1"], &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")]).unwrap()
    }

    fn set(l: &FiniteLattice, names: &[&str]) -> ElemSet {
        l.resolve_set(names).unwrap()
    }

    #[test]
    fn one_point_lattice() {
        let l = build_lattice::<&str>(&["1"], &[]).unwrap();
        assert_eq!(l.top(), l.bottom());
        assert_eq!(l.atoms(), ElemSet::EMPTY);
        assert!(l.is_atomistic());
    }

    #[test]
    fn photon_has_four_atoms() {
        let l = photon();
        assert_eq!(l.atoms(), set(&l, &["a", "b", "a'", "b'"]));
        assert!(l.is_atomistic());
    }

    #[test]
    fn missing_top_is_not_a_lattice() {
        let err = build_lattice(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotALattice {
                a: "a".into(),
                b: "b".into(),
                missing: Bound::LeastUpperBound
            }
        );
    }

    #[test]
    fn cycles_are_rejected() {
        let err = build_lattice(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err, LatticeError::NotAPoset("a".into(), "b".into()));
    }

    #[test]
    fn unknown_and_duplicate_elements() {
        assert_eq!(
            build_lattice(&["a"], &[("a", "z")]).unwrap_err(),
            LatticeError::UnknownElement("z".into())
        );
        assert_eq!(
            build_lattice::<&str>(&["a", "a"], &[]).unwrap_err(),
            LatticeError::DuplicateElement("a".into())
        );
        assert_eq!(build_lattice::<&str>(&[], &[]).unwrap_err(), LatticeError::Empty);
    }

    #[test]
    fn photon_meets_and_joins() {
        let l = photon();
        let e = |n| l.elem(n).unwrap();
        assert_eq!(l.join_set(set(&l, &["a", "b"])), e("1"));
        assert_eq!(l.meet_set(ElemSet::EMPTY), e("1"));
        assert_eq!(l.join_set(ElemSet::EMPTY), e("0"));
        assert_eq!(l.meet_set(set(&l, &["a", "a'"])), e("0"));
    }

    #[test]
    fn chain_is_not_atomistic() {
        let l = chain3();
        assert_eq!(l.atoms(), set(&l, &["m"]));
        assert!(!l.is_atomistic());
        assert_eq!(l.atomistic_violation(), l.elem("1"));
        assert!(boolean2().is_atomistic());
    }

    #[test]
    fn distributive_joins() {
        let l = photon();
        let ab = set(&l, &["a", "b"]);
        assert!(!l.is_distributive_join(ab));
        // b = a' witnesses the failure: a' ∧ 1 = a' but the spread join is 0.
        assert_eq!(l.distributive_join_violation(ab), l.elem("a'"));
        assert!(l.is_distributive_join(set(&l, &["a"])));
        let b = boolean2();
        assert!(b.is_distributive_join(set(&b, &["x", "y"])));
        assert!(b.is_distributive());
        assert!(!l.is_distributive());
    }

    #[test]
    fn adjoints_of_simple_maps() {
        let l = photon();
        let id = MonotoneMap::identity(&l);
        let r = id.right_adjoint().unwrap();
        assert_eq!(r.table(), id.table());

        let bottom = MonotoneMap::new(&l, &l, vec![l.bottom(); l.len()]).unwrap();
        let r = bottom.right_adjoint().unwrap();
        assert!(r.table().iter().all(|&x| x == l.top()));
        assert!(bottom.adjunction_violation(&r).is_none());
        assert!(r.is_meet_preserving());
        let back = r.left_adjoint().unwrap();
        assert_eq!(back.table(), bottom.table());
    }

    #[test]
    fn constant_top_is_not_join_preserving() {
        let l = chain3();
        let f = MonotoneMap::new(&l, &l, vec![l.top(); 3]).unwrap();
        assert_eq!(
            f.right_adjoint().unwrap_err(),
            MapError::NotJoinPreserving(ElemSet::EMPTY)
        );
    }

    #[test]
    fn non_monotone_maps_are_rejected() {
        let l = chain3();
        let flip = vec![l.top(), l.elem("m").unwrap(), l.bottom()];
        assert!(matches!(MonotoneMap::new(&l, &l, flip), Err(MapError::NotMonotone(..))));
    }

    #[test]
    fn covers_of_photon() {
        let l = photon();
        assert_eq!(l.cover_pairs().len(), 8);
    }
}
