//! Brute-force reference implementations used by tests.
//!
//! Nothing here shares code with the engine beyond the lattice tables.
//! Every subset is enumerated explicitly, so these only work on small
//! lattices.

use std::collections::HashMap;

use crate::order::FiniteLattice;
use crate::set::{Elem, ElemSet};

/// Meet by scanning all lower bounds.
pub fn meet(l: &FiniteLattice, set: ElemSet) -> Elem {
    let lower: Vec<Elem> = l.elements().filter(|&x| set.iter().all(|s| l.leq(x, s))).collect();
    *lower
        .iter()
        .find(|&&x| lower.iter().all(|&y| l.leq(y, x)))
        .expect("lattice has meets")
}

/// Join by scanning all upper bounds.
pub fn join(l: &FiniteLattice, set: ElemSet) -> Elem {
    let upper: Vec<Elem> = l.elements().filter(|&x| set.iter().all(|s| l.leq(s, x))).collect();
    *upper
        .iter()
        .find(|&&x| upper.iter().all(|&y| l.leq(x, y)))
        .expect("lattice has joins")
}

/// `b ∧ ⋁A = ⋁{b ∧ a}` for every `b`, computed with the scanning bounds.
pub fn distributive(l: &FiniteLattice, set: ElemSet) -> bool {
    let j = join(l, set);
    l.elements().all(|b| {
        let meets: ElemSet = set.iter().map(|a| meet(l, ElemSet::singleton(a).with(b))).collect();
        meet(l, ElemSet::singleton(b).with(j)) == join(l, meets)
    })
}

/// Least set containing `set` that is down-closed and contains the join of
/// every one of its distributive subsets, by naive saturation over all
/// subsets. Bottom is always included.
pub fn di_closure(l: &FiniteLattice, set: ElemSet) -> ElemSet {
    let mut cur = set;
    cur.insert(join(l, ElemSet::EMPTY));
    loop {
        let mut next = cur;
        for x in cur.iter() {
            for y in l.elements() {
                if l.leq(y, x) {
                    next.insert(y);
                }
            }
        }
        for sub in cur.subsets() {
            if distributive(l, sub) {
                next.insert(join(l, sub));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// [`di_closure`] with the distributive joins of every subset memoized, for
/// closing many sets of one lattice.
pub struct ClosureOracle<'a> {
    lattice: &'a FiniteLattice,
    joins: HashMap<u64, Option<Elem>>,
}

impl<'a> ClosureOracle<'a> {
    pub fn new(lattice: &'a FiniteLattice) -> Self {
        ClosureOracle {
            lattice,
            joins: HashMap::new(),
        }
    }

    fn distributive_join(&mut self, sub: ElemSet) -> Option<Elem> {
        let l = self.lattice;
        *self
            .joins
            .entry(sub.bits())
            .or_insert_with(|| distributive(l, sub).then(|| join(l, sub)))
    }

    pub fn closure(&mut self, set: ElemSet) -> ElemSet {
        let l = self.lattice;
        let mut cur = set;
        cur.insert(join(l, ElemSet::EMPTY));
        loop {
            let mut next = cur;
            for x in cur.iter() {
                next = next | l.elements().filter(|&y| l.leq(y, x)).collect();
            }
            for sub in cur.subsets() {
                if let Some(j) = self.distributive_join(sub) {
                    next.insert(j);
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }
}

/// All distributive ideals, as closures of every subset, sorted by bits.
pub fn di_ideals(l: &FiniteLattice) -> Vec<ElemSet> {
    let mut oracle = ClosureOracle::new(l);
    let mut v: Vec<ElemSet> = l.all().subsets().map(|s| oracle.closure(s)).collect();
    v.sort_by_key(|s| s.bits());
    v.dedup();
    v
}

/// Direct definition check: non-empty, down-closed, contains every
/// distributive join of a subset.
pub fn is_ideal(l: &FiniteLattice, set: ElemSet) -> bool {
    !set.is_empty() && di_closure(l, set) == set
}

/// Heyting implication in `DI(L)` as the largest ideal `C` with
/// `A ∩ C ⊆ B`, found by scanning every ideal.
pub fn heyting_implication(ideals: &[ElemSet], a: ElemSet, b: ElemSet) -> ElemSet {
    ideals
        .iter()
        .copied()
        .filter(|&c| (a & c).is_subset(b))
        .fold(ElemSet::EMPTY, |acc, c| acc | c)
}

/// Causation through the atomwise formula: the ideal generated by the atoms
/// whose image lies inside `b`.
pub fn causate_by_atoms(l: &FiniteLattice, atom_images: &[(Elem, ElemSet)], b: ElemSet) -> ElemSet {
    let atoms: ElemSet = atom_images
        .iter()
        .filter(|(_, img)| img.is_subset(b))
        .map(|&(p, _)| p)
        .collect();
    di_closure(l, atoms)
}

#[cfg(feature = "oracle")]
pub use sample::*;

/// Seeded samplers for property tests.
#[cfg(feature = "oracle")]
mod sample {
    use std::sync::Arc;

    use rand::Rng;

    use crate::dynamics::{DynError, Induction};
    use crate::ideals::DiLattice;
    use crate::order::FiniteLattice;
    use crate::ortho::{ClosureSpace, StateClosure};
    use crate::set::{Elem, ElemSet};

    /// The closed-set lattice of a random Moore family on `1..=max_atoms`
    /// points that contains every singleton. Such lattices are atomistic.
    pub fn random_atomistic_lattice(rng: &mut impl Rng, max_atoms: usize) -> FiniteLattice {
        let k = rng.gen_range(1..=max_atoms);
        let full = ElemSet::full(k);
        let density: f64 = rng.gen();
        let mut family: Vec<ElemSet> = vec![ElemSet::EMPTY, full];
        family.extend((0..k).map(|i| ElemSet::singleton(Elem::new(i))));
        for s in full.subsets().filter(|s| s.len() >= 2 && *s != full) {
            if rng.gen_bool(density) {
                family.push(s);
            }
        }
        loop {
            let mut next = family.clone();
            for &a in &family {
                for &b in &family {
                    if !next.contains(&(a & b)) {
                        next.push(a & b);
                    }
                }
            }
            if next.len() == family.len() {
                break;
            }
            family = next;
        }
        let states: Vec<String> = (0..k).map(|i| char::from(b'a' + i as u8).to_string()).collect();
        let closed: Vec<Vec<String>> = family
            .iter()
            .map(|s| s.iter().map(|x| states[x.index()].clone()).collect())
            .collect();
        let space = ClosureSpace::new(&states, &closed).expect("intersection-closed family");
        space.closed_lattice().expect("closed sets form a lattice").0
    }

    /// A random continuous induction, by rejection sampling over random
    /// atom images. `None` if `tries` draws were all discontinuous.
    pub fn random_induction(rng: &mut impl Rng, di: &Arc<DiLattice>, tries: usize) -> Option<Induction> {
        let l = di.lattice();
        let atoms: Vec<Elem> = l.atoms().iter().collect();
        for _ in 0..tries {
            let p_in: f64 = rng.gen_range(0.1..0.6);
            let images: Vec<(Elem, ElemSet)> = atoms
                .iter()
                .map(|&p| {
                    let chosen: ElemSet = atoms.iter().copied().filter(|_| rng.gen_bool(p_in)).collect();
                    (p, di.closure(chosen).members())
                })
                .collect();
            match Induction::from_images(di.clone(), "r", &images) {
                Ok(e) => return Some(e),
                Err(DynError::Discontinuous(..)) => continue,
                Err(e) => panic!("sampler produced an invalid induction: {e}"),
            }
        }
        None
    }
}
