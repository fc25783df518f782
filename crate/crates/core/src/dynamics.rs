//! Inductions and their action on properties and property sets.
//!
//! An induction is given atomwise: each atom `p` is sent to the ideal
//! `ê*(↓p)`. Because `DI(L)` is the powerset of atoms on an atomistic
//! lattice, this determines a join-preserving `ê*` on all of `DI(L)`.
//! Everything else (causation, the lattice-level maps, the connectives) is
//! derived and cached as index tables at construction.

use std::sync::Arc;

use thiserror::Error;

use crate::ideals::{DiLattice, IdealError, PropertySet};
use crate::order::{FiniteLattice, LatticeError};
use crate::report::{LawReport, LawSet};
use crate::set::{Elem, ElemSet};
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("lattice is not atomistic: `{0}` is not the join of its atoms")]
    NotAtomistic(String),
    #[error("invalid image for atom `{atom}`: {reason}")]
    InvalidImage { atom: String, reason: String },
    #[error("no image given for atom `{0}`")]
    MissingAtom(String),
    #[error("induction is not join-continuous: {0} and {1} have the same join but their images do not")]
    Discontinuous(String, String),
    #[error("inductions `{0}` and `{1}` act on different lattices")]
    DifferentLattice(String, String),
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A join-continuous transition on property sets.
///
/// Equality is extensional: two inductions are equal when they act
/// identically on the same lattice, whatever their names.
#[derive(Clone, Debug)]
pub struct Induction {
    name: String,
    di: Arc<DiLattice>,
    /// `ê*(↓p)` for each atom, in atom order.
    atom_images: Vec<(Elem, PropertySet)>,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    prop_fwd: Vec<Elem>,
    prop_bwd: Vec<Elem>,
}

impl PartialEq for Induction {
    fn eq(&self, other: &Self) -> bool {
        self.di == other.di && self.fwd == other.fwd
    }
}

impl Eq for Induction {}

/// Builds an induction from named atom images.
///
/// Every atom needs exactly one image, and every image must already be a
/// distributive ideal.
pub fn make_induction<S: AsRef<str>>(
    di: Arc<DiLattice>,
    name: &str,
    atom_map: &[(S, Vec<S>)],
) -> Result<Induction, DynError> {
    let l = di.lattice();
    let mut images = Vec::with_capacity(atom_map.len());
    for (atom, image) in atom_map {
        let atom = l.resolve(atom.as_ref())?;
        images.push((atom, l.resolve_set(image)?));
    }
    Induction::from_images(di, name, &images)
}

impl Induction {
    /// Builds an induction from atom images given as element sets.
    pub fn from_images(di: Arc<DiLattice>, name: &str, images: &[(Elem, ElemSet)]) -> Result<Self, DynError> {
        let l = di.lattice();
        if let Some(x) = l.atomistic_violation() {
            return Err(DynError::NotAtomistic(l.name(x).to_owned()));
        }
        let mut table: Vec<Option<PropertySet>> = vec![None; l.len()];
        for &(atom, image) in images {
            let atom_name = l.name(atom).to_owned();
            if !l.atoms().contains(atom) {
                return Err(DynError::InvalidImage {
                    atom: atom_name,
                    reason: "not an atom".into(),
                });
            }
            if table[atom.index()].is_some() {
                return Err(DynError::InvalidImage {
                    atom: atom_name,
                    reason: "image given twice".into(),
                });
            }
            let ideal = di.ideal(image).ok_or_else(|| DynError::InvalidImage {
                atom: atom_name,
                reason: format!("{} is not a distributive ideal", l.format_set(image)),
            })?;
            table[atom.index()] = Some(ideal);
        }
        let atom_images = l
            .atoms()
            .iter()
            .map(|p| {
                table[p.index()]
                    .map(|img| (p, img))
                    .ok_or_else(|| DynError::MissingAtom(l.name(p).to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::build(di, name.to_owned(), atom_images)
    }

    /// `p ↦ ↓p`, the induction that changes nothing.
    pub fn freeze(di: Arc<DiLattice>) -> Result<Self, DynError> {
        let images: Vec<(Elem, ElemSet)> = di.lattice().atoms().iter().map(|p| (p, di.lattice().down(p))).collect();
        Self::from_images(di, "freeze", &images)
    }

    fn build(di: Arc<DiLattice>, name: String, atom_images: Vec<(Elem, PropertySet)>) -> Result<Self, DynError> {
        let l = di.lattice();
        let fwd: Vec<usize> = di
            .ideals()
            .iter()
            .map(|&a| {
                let imgs = atom_images.iter().filter(|(p, _)| a.contains(*p)).map(|&(_, img)| img);
                di.index_of(di.join_all(imgs))
            })
            .collect();
        let bwd: Vec<usize> = (0..di.len())
            .map(|b| {
                let below = (0..di.len())
                    .filter(|&a| di.get(fwd[a]).is_subset(di.get(b)))
                    .map(|a| di.get(a));
                di.index_of(di.join_all(below))
            })
            .collect();
        let prop_fwd: Vec<Elem> = l
            .elements()
            .map(|a| di.resolve(di.get(fwd[di.index_of(di.principal(a))])))
            .collect();
        let prop_bwd: Vec<Elem> = l
            .elements()
            .map(|b| {
                let below: ElemSet = l.elements().filter(|&a| l.leq(prop_fwd[a.index()], b)).collect();
                l.join_set(below)
            })
            .collect();
        let e = Induction {
            name,
            di,
            atom_images,
            fwd,
            bwd,
            prop_fwd,
            prop_bwd,
        };
        if let Some((a, b)) = e.continuity_violation() {
            return Err(DynError::Discontinuous(e.di.format(a), e.di.format(b)));
        }
        Ok(e)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn di(&self) -> &Arc<DiLattice> {
        &self.di
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.di.lattice()
    }

    pub fn atom_images(&self) -> &[(Elem, PropertySet)] {
        &self.atom_images
    }

    /// `ê*` as a table over ideal indices.
    pub fn forward_table(&self) -> &[usize] {
        &self.fwd
    }

    /// `ê_*` as a table over ideal indices.
    pub fn backward_table(&self) -> &[usize] {
        &self.bwd
    }

    /// `ê*(A)`.
    pub fn propagate(&self, a: PropertySet) -> PropertySet {
        self.di.get(self.fwd[self.di.index_of(a)])
    }

    /// `ê_*(B)`, the weakest property set guaranteeing `B` afterwards.
    pub fn causate(&self, b: PropertySet) -> PropertySet {
        self.di.get(self.bwd[self.di.index_of(b)])
    }

    /// `ē*(a)`.
    pub fn propagate_property(&self, a: Elem) -> Elem {
        self.prop_fwd[a.index()]
    }

    /// `ē_*(b)`, written `e.b`.
    pub fn causate_property(&self, b: Elem) -> Elem {
        self.prop_bwd[b.index()]
    }

    /// `A ⇝ B`: `ê*(A) ⊆ B`.
    pub fn causal_relation(&self, a: PropertySet, b: PropertySet) -> bool {
        self.propagate(a).is_subset(b)
    }

    /// `A ↫ B`: `ê_*(B) ⊆ A`.
    pub fn backward_relation(&self, a: PropertySet, b: PropertySet) -> bool {
        self.causate(b).is_subset(a)
    }

    /// `ê*(↓d)`.
    fn principal_image(&self, d: Elem) -> PropertySet {
        self.propagate(self.di.principal(d))
    }

    /// `A →ᵉ B = {c | ∀d ≤ c: d ∈ A ⟹ ê*(↓d) ⊆ B}`.
    pub fn dyn_impl_fwd(&self, a: PropertySet, b: PropertySet) -> PropertySet {
        let l = self.lattice();
        let ok: ElemSet = l
            .elements()
            .filter(|&d| !a.contains(d) || self.principal_image(d).is_subset(b))
            .collect();
        self.downward_interior(ok)
    }

    /// `A ←ᵉ B = {c | ∀d ≤ c: ê*(↓d) ⊆ B ⟹ d ∈ A}`.
    pub fn dyn_impl_bwd(&self, a: PropertySet, b: PropertySet) -> PropertySet {
        let l = self.lattice();
        let ok: ElemSet = l
            .elements()
            .filter(|&d| a.contains(d) || !self.principal_image(d).is_subset(b))
            .collect();
        self.downward_interior(ok)
    }

    /// `{c | ↓c ⊆ ok}`, wrapped as an ideal.
    fn downward_interior(&self, ok: ElemSet) -> PropertySet {
        let l = self.lattice();
        let set: ElemSet = l.elements().filter(|&c| l.down(c).is_subset(ok)).collect();
        self.di.ideal(set).unwrap_or_else(|| {
            panic!(
                "dynamic implication produced {}, which is not a distributive ideal",
                l.format_set(set)
            )
        })
    }

    /// `A ⊗ₑ B = ê*(A ∧ B)`.
    pub fn dyn_tensor_fwd(&self, a: PropertySet, b: PropertySet) -> PropertySet {
        self.propagate(self.di.meet(a, b))
    }

    /// `A ₑ⊗ B = A ∧ ê_*(B)`.
    pub fn dyn_tensor_bwd(&self, a: PropertySet, b: PropertySet) -> PropertySet {
        self.di.meet(a, self.causate(b))
    }

    /// Whether `ê*` is the identity.
    pub fn is_freeze(&self) -> bool {
        self.fwd.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// First pair of ideals with equal joins whose images have different
    /// joins, in lexicographic order of the pair.
    pub fn continuity_violation(&self) -> Option<(PropertySet, PropertySet)> {
        let di = &*self.di;
        let resolve = |i: usize| di.resolve(di.get(i));
        pair_violation(di.len(), resolve, |i| resolve(self.fwd[i])).map(|(a, b)| (di.get(a), di.get(b)))
    }

    /// The same condition phrased through resolution:
    /// `R(A) = R(B) ⟹ R(ê*A) = R(ê*B)`.
    pub fn resolution_continuity_violation(&self) -> Option<(PropertySet, PropertySet)> {
        let di = &*self.di;
        let r = |i: usize| di.resolution(di.get(i));
        pair_violation(di.len(), r, |i| r(self.fwd[i])).map(|(a, b)| (di.get(a), di.get(b)))
    }

    pub fn continuity(&self) -> ContinuityReport {
        let render = |(a, b): (PropertySet, PropertySet)| ContinuityWitness {
            a: self.di.format(a),
            b: self.di.format(b),
            image_join_a: self.lattice().name(self.di.resolve(self.propagate(a))).to_owned(),
            image_join_b: self.lattice().name(self.di.resolve(self.propagate(b))).to_owned(),
        };
        ContinuityReport {
            join_form: self.continuity_violation().map(render),
            resolution_form: self.resolution_continuity_violation().map(render),
        }
    }

    /// `f(S) = {p | ∃q ∈ S: q ∈ ê*(↓p)}` on atom sets.
    pub fn relational_inverse(&self, atoms: ElemSet) -> ElemSet {
        self.atom_images
            .iter()
            .filter(|(_, img)| !(img.members() & atoms).is_empty())
            .map(|&(p, _)| p)
            .collect()
    }

    /// `ê_*` on atom sets: `{p | ê*(↓p) ∩ atoms ⊆ S}`.
    pub fn adjoint_on_atoms(&self, atoms: ElemSet) -> ElemSet {
        let all_atoms = self.lattice().atoms();
        self.atom_images
            .iter()
            .filter(|(_, img)| (img.members() & all_atoms).is_subset(atoms))
            .map(|&(p, _)| p)
            .collect()
    }

    /// Evaluates both atom-level maps on every atom set, with the
    /// continuity verdict of each.
    pub fn compare_inverse_vs_adjoint(&self) -> InverseComparison {
        let l = self.lattice();
        let atoms = l.atoms();
        let mut sets: Vec<ElemSet> = atoms.subsets().collect();
        sets.sort_by(|a, b| a.lex_cmp(*b));
        let witness = |f: &dyn Fn(ElemSet) -> ElemSet| {
            pair_violation(sets.len(), |i| l.join_set(sets[i]), |i| l.join_set(f(sets[i]))).map(|(i, j)| {
                let (a, b) = (sets[i], sets[j]);
                ContinuityWitness {
                    a: l.format_set(a),
                    b: l.format_set(b),
                    image_join_a: l.name(l.join_set(f(a))).to_owned(),
                    image_join_b: l.name(l.join_set(f(b))).to_owned(),
                }
            })
        };
        let rows = sets
            .iter()
            .map(|&s| {
                let (inv, adj) = (self.relational_inverse(s), self.adjoint_on_atoms(s));
                InverseRow {
                    atoms: l.format_set(s),
                    inverse: l.format_set(inv),
                    adjoint: l.format_set(adj),
                    differs: inv != adj,
                }
            })
            .collect();
        InverseComparison {
            induction_continuity: self.continuity().join_form,
            inverse_continuity: witness(&|s| self.relational_inverse(s)),
            adjoint_continuity: witness(&|s| self.adjoint_on_atoms(s)),
            rows,
        }
    }

    /// `e1 & e2`: first `e1`, then `e2`. `ê* = ê2* ∘ ê1*`.
    pub fn concat(&self, then: &Induction) -> Result<Induction, DynError> {
        self.same_lattice(then)?;
        let images = self
            .atom_images
            .iter()
            .map(|&(p, img)| (p, then.propagate(img)))
            .collect();
        Self::build(self.di.clone(), format!("({} & {})", self.name, then.name), images)
    }

    /// `⋁ eᵢ`: `ê*(A) = ⋁_DI ê*ᵢ(A)`. Needs at least one induction.
    pub fn choice(es: &[&Induction]) -> Result<Induction, DynError> {
        let (first, rest) = es.split_first().expect("choice of no inductions");
        for e in rest {
            first.same_lattice(e)?;
        }
        let di = first.di.clone();
        let images = first
            .atom_images
            .iter()
            .map(|&(p, _)| {
                let pp = di.principal(p);
                (p, di.join_all(es.iter().map(|e| e.propagate(pp))))
            })
            .collect();
        let name = es.iter().map(|e| e.name.as_str()).collect::<Vec<_>>().join(" | ");
        Self::build(di, format!("({name})"), images)
    }

    fn same_lattice(&self, other: &Induction) -> Result<(), DynError> {
        if self.di == other.di {
            Ok(())
        } else {
            Err(DynError::DifferentLattice(self.name.clone(), other.name.clone()))
        }
    }

    /// Every structural law of the induction, checked exhaustively over
    /// `DI(L)` (pairs and triples) and over `L`.
    pub fn laws(&self, caps: &Caps) -> Result<LawSet, DynError> {
        let di = &*self.di;
        let n = di.len();
        if n > caps.law_check_ideals {
            return Err(DynError::SizeCapExceeded(format!(
                "{n} ideals exceed the law-check cap of {}",
                caps.law_check_ideals
            )));
        }
        let l = self.lattice();
        let ids: Vec<PropertySet> = di.ideals().to_vec();
        let fmt = |a: PropertySet| di.format(a);
        let pairs = || ids.iter().flat_map(|&a| ids.iter().map(move |&b| (a, b)));
        let triples = || pairs().flat_map(|(a, b)| ids.iter().map(move |&c| (a, b, c)));
        let pair = |(a, b): (PropertySet, PropertySet)| format!("A={}, B={}", fmt(a), fmt(b));
        let triple =
            |(a, b, c): (PropertySet, PropertySet, PropertySet)| format!("A={}, B={}, C={}", fmt(a), fmt(b), fmt(c));
        let elem_pair = |(a, b): (Elem, Elem)| format!("a={}, b={}", l.name(a), l.name(b));
        let top = di.top();
        let bottom = di.bottom();

        let impl_fwd: Vec<PropertySet> = pairs().map(|(a, b)| self.dyn_impl_fwd(a, b)).collect();
        let impl_bwd: Vec<PropertySet> = pairs().map(|(a, b)| self.dyn_impl_bwd(a, b)).collect();
        let at = |t: &[PropertySet], a: PropertySet, b: PropertySet| t[di.index_of(a) * n + di.index_of(b)];

        let mut set = LawSet::new();
        let join_pres = (self.propagate(bottom) != bottom)
            .then_some((bottom, bottom))
            .or_else(|| {
                pairs().find(|&(a, b)| self.propagate(di.join(a, b)) != di.join(self.propagate(a), self.propagate(b)))
            });
        set.push(LawReport::from_violation("ê* preserves joins", join_pres, pair));
        let meet_pres = (self.causate(top) != top).then_some((top, top)).or_else(|| {
            pairs().find(|&(a, b)| self.causate(di.meet(a, b)) != di.meet(self.causate(a), self.causate(b)))
        });
        set.push(LawReport::from_violation("ê_* preserves meets", meet_pres, pair));
        set.push(LawReport::from_violation(
            "ê* ⊣ ê_*",
            pairs().find(|&(a, b)| self.propagate(a).is_subset(b) != a.is_subset(self.causate(b))),
            pair,
        ));
        set.push(LawReport::from_violation(
            "triangle identities for ê* ⊣ ê_*",
            ids.iter().copied().find(|&a| {
                self.propagate(self.causate(self.propagate(a))) != self.propagate(a)
                    || self.causate(self.propagate(self.causate(a))) != self.causate(a)
            }),
            fmt,
        ));
        set.push(LawReport::from_violation(
            "ē* ⊣ ē_*",
            l.elements()
                .flat_map(|a| l.elements().map(move |b| (a, b)))
                .find(|&(a, b)| l.leq(self.propagate_property(a), b) != l.leq(a, self.causate_property(b))),
            elem_pair,
        ));
        set.push(LawReport::from_violation(
            "triangle identities for ē* ⊣ ē_*",
            l.elements().find(|&a| {
                let (f, g) = (|x| self.propagate_property(x), |x| self.causate_property(x));
                f(g(f(a))) != f(a) || g(f(g(a))) != g(a)
            }),
            |a| l.name(a).to_owned(),
        ));
        set.push(LawReport::from_violation(
            "property counit ē*(ē_*(a)) ≤ a",
            l.elements()
                .find(|&a| !l.leq(self.propagate_property(self.causate_property(a)), a)),
            |a| l.name(a).to_owned(),
        ));
        let cont = self.continuity();
        set.push(LawReport::from_violation("join continuity", cont.join_form, |w| {
            w.to_string()
        }));
        set.push(LawReport::from_violation(
            "join continuity via resolution",
            cont.resolution_form,
            |w| w.to_string(),
        ));
        set.push(LawReport::from_violation(
            "(A →ᵉ B) = L ⟺ A ⇝ B",
            pairs().find(|&(a, b)| (at(&impl_fwd, a, b) == top) != self.causal_relation(a, b)),
            pair,
        ));
        set.push(LawReport::from_violation(
            "(A ←ᵉ B) = L ⟺ A ↫ B",
            pairs().find(|&(a, b)| (at(&impl_bwd, a, b) == top) != self.backward_relation(a, b)),
            pair,
        ));
        set.push(LawReport::from_violation(
            "(A ⊗ₑ −) ⊣ (A →ᵉ −)",
            triples().find(|&(a, b, c)| self.dyn_tensor_fwd(a, b).is_subset(c) != b.is_subset(at(&impl_fwd, a, c))),
            triple,
        ));
        set.push(LawReport::from_violation(
            "(− ₑ⊗ B) ⊣ (− ←ᵉ B)",
            triples().find(|&(a, b, c)| self.dyn_tensor_bwd(a, b).is_subset(c) != a.is_subset(at(&impl_bwd, c, b))),
            triple,
        ));
        set.push(LawReport::from_violation(
            "⊗ₑ commutative",
            pairs().find(|&(a, b)| self.dyn_tensor_fwd(a, b) != self.dyn_tensor_fwd(b, a)),
            pair,
        ));
        let distrib = ids
            .iter()
            .find(|&&a| self.dyn_tensor_fwd(a, bottom) != bottom)
            .map(|&a| (a, bottom, bottom))
            .or_else(|| {
                triples().find(|&(a, b, c)| {
                    self.dyn_tensor_fwd(a, di.join(b, c))
                        != di.join(self.dyn_tensor_fwd(a, b), self.dyn_tensor_fwd(a, c))
                })
            });
        set.push(LawReport::from_violation("⊗ₑ distributes over joins", distrib, triple));
        set.push(LawReport::from_violation(
            "(L ⊗ₑ −) = ê*",
            ids.iter()
                .copied()
                .find(|&b| self.dyn_tensor_fwd(top, b) != self.propagate(b)),
            fmt,
        ));
        set.push(LawReport::from_violation(
            "(L ₑ⊗ −) = ê_*",
            ids.iter()
                .copied()
                .find(|&b| self.dyn_tensor_bwd(top, b) != self.causate(b)),
            fmt,
        ));
        if self.is_freeze() {
            set.extend(self.freeze_reductions());
        }
        Ok(set)
    }

    /// The collapses expected of an induction acting as the identity.
    pub fn freeze_reductions(&self) -> LawSet {
        let di = &*self.di;
        let l = self.lattice();
        let ids = di.ideals();
        let pairs = || ids.iter().flat_map(|&a| ids.iter().map(move |&b| (a, b)));
        let pair = |(a, b): (PropertySet, PropertySet)| format!("A={}, B={}", di.format(a), di.format(b));
        let mut set = LawSet::new();
        set.push(LawReport::from_violation(
            "freeze: ⇝ is ⊆",
            pairs().find(|&(a, b)| self.causal_relation(a, b) != a.is_subset(b)),
            pair,
        ));
        set.push(LawReport::from_violation(
            "freeze: →ᵉ is →_DI",
            pairs().find(|&(a, b)| self.dyn_impl_fwd(a, b) != di.implies(a, b)),
            pair,
        ));
        set.push(LawReport::from_violation(
            "freeze: ⊗ₑ is ∧_DI",
            pairs().find(|&(a, b)| self.dyn_tensor_fwd(a, b) != di.meet(a, b)),
            pair,
        ));
        set.push(LawReport::from_violation(
            "freeze: ē* and ē_* are the identity",
            l.elements()
                .find(|&a| self.propagate_property(a) != a || self.causate_property(a) != a),
            |a| l.name(a).to_owned(),
        ));
        set
    }
}

/// First index pair `(i, j)`, `i < j`, with `key(i) == key(j)` but
/// `image(i) != image(j)`.
fn pair_violation<K: PartialEq, V: PartialEq>(
    n: usize,
    key: impl Fn(usize) -> K,
    image: impl Fn(usize) -> V,
) -> Option<(usize, usize)> {
    let keys: Vec<K> = (0..n).map(&key).collect();
    let images: Vec<V> = (0..n).map(&image).collect();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| keys[i] == keys[j] && images[i] != images[j])
}

/// A pair with equal joins whose images have different joins.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ContinuityWitness {
    pub a: String,
    pub b: String,
    pub image_join_a: String,
    pub image_join_b: String,
}

impl std::fmt::Display for ContinuityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "A={}, B={}: image joins {} vs {}",
            self.a, self.b, self.image_join_a, self.image_join_b
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ContinuityReport {
    pub join_form: Option<ContinuityWitness>,
    pub resolution_form: Option<ContinuityWitness>,
}

impl ContinuityReport {
    pub fn holds(&self) -> bool {
        self.join_form.is_none() && self.resolution_form.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct InverseRow {
    pub atoms: String,
    pub inverse: String,
    pub adjoint: String,
    pub differs: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct InverseComparison {
    /// Verdict for `ê*` itself.
    pub induction_continuity: Option<ContinuityWitness>,
    pub inverse_continuity: Option<ContinuityWitness>,
    pub adjoint_continuity: Option<ContinuityWitness>,
    pub rows: Vec<InverseRow>,
}

/// A finite set of inductions closed under `&` and binary choice, with
/// inductions identified by action.
#[derive(Debug, Clone)]
pub struct InductionAlgebra {
    members: Vec<Induction>,
}

impl InductionAlgebra {
    /// Closes `generators` under `&` and `|`, refusing to grow past
    /// `caps.algebra_size` members.
    pub fn generate(generators: &[Induction], caps: &Caps) -> Result<Self, DynError> {
        let mut members: Vec<Induction> = Vec::new();
        for g in generators {
            if !members.contains(g) {
                members.push(g.clone());
            }
        }
        let mut frontier = 0;
        while frontier < members.len() {
            let n = members.len();
            for i in 0..n {
                for j in 0..n {
                    if i.max(j) < frontier {
                        continue;
                    }
                    let (x, y) = (&members[i], &members[j]);
                    for cand in [x.concat(y)?, Induction::choice(&[x, y])?] {
                        if !members.contains(&cand) {
                            members.push(cand);
                            if members.len() > caps.algebra_size {
                                return Err(DynError::SizeCapExceeded(format!(
                                    "induction algebra exceeds {} members",
                                    caps.algebra_size
                                )));
                            }
                        }
                    }
                }
            }
            frontier = n;
        }
        Ok(InductionAlgebra { members })
    }

    pub fn members(&self) -> &[Induction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Module laws of the causation action on `L`, and the algebraic
    /// identities of `&` and choice, all up to action.
    pub fn module_action_check(&self) -> Result<LawSet, DynError> {
        let ms = &self.members;
        let l = ms.first().map(|e| e.lattice().clone());
        let mut set = LawSet::new();
        let Some(l) = l else { return Ok(set) };
        let idx = |e: &Induction| ms.iter().position(|m| m == e);

        let mut concat_law = None;
        let mut choice_law = None;
        let mut closed = None;
        let mut assoc = None;
        let mut choice_alg = None;
        for x in ms {
            for y in ms {
                let xy = x.concat(y)?;
                let xoy = Induction::choice(&[x, y])?;
                if closed.is_none() && (idx(&xy).is_none() || idx(&xoy).is_none()) {
                    closed = Some(format!("{} and {}", x.name, y.name));
                }
                if concat_law.is_none() {
                    concat_law = l
                        .elements()
                        .find(|&a| xy.causate_property(a) != x.causate_property(y.causate_property(a)))
                        .map(|a| format!("e1={}, e2={}, a={}", x.name, y.name, l.name(a)));
                }
                if choice_law.is_none() {
                    choice_law = l
                        .elements()
                        .find(|&a| xoy.causate_property(a) != l.meet(x.causate_property(a), y.causate_property(a)))
                        .map(|a| format!("e1={}, e2={}, a={}", x.name, y.name, l.name(a)));
                }
                if choice_alg.is_none() && (xoy != Induction::choice(&[y, x])? || Induction::choice(&[x, x])? != *x) {
                    choice_alg = Some(format!("{} and {}", x.name, y.name));
                }
                for z in ms {
                    if assoc.is_none() {
                        let left = xy.concat(z)?;
                        let right = x.concat(&y.concat(z)?)?;
                        let cl = Induction::choice(&[&xoy, z])?;
                        let cr = Induction::choice(&[x, &Induction::choice(&[y, z])?])?;
                        if left != right || cl != cr {
                            assoc = Some(format!("{}, {}, {}", x.name, y.name, z.name));
                        }
                    }
                }
            }
        }
        set.push(LawReport::from_violation("closed under & and choice", closed, |w| w));
        set.push(LawReport::from_violation("(e1 & e2).a = e1.(e2.a)", concat_law, |w| w));
        set.push(LawReport::from_violation(
            "(e1 ⋁ e2).a = e1.a ∧ e2.a",
            choice_law,
            |w| w,
        ));
        set.push(LawReport::from_violation("& and choice associative", assoc, |w| w));
        set.push(LawReport::from_violation(
            "choice commutative and idempotent",
            choice_alg,
            |w| w,
        ));
        Ok(set)
    }
}
