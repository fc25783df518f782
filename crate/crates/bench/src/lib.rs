//! Benchmark fixtures: catalog models with their ideal lattices and a few
//! fixed inductions.

use std::sync::Arc;

use oqlkit_core::catalog;
use oqlkit_core::{enumerate_di, Caps, DiLattice, Elem, ElemSet, FiniteLattice, Induction};

/// The lattice of a catalog entry. Panics on unknown names.
pub fn lattice(name: &str) -> FiniteLattice {
    catalog::build(name)
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .lattice()
        .clone()
}

pub fn di(name: &str) -> Arc<DiLattice> {
    Arc::new(enumerate_di(&lattice(name), &Caps::default()).expect("bench lattices are within the caps"))
}

/// Sends each atom to the next one in index order, wrapping around.
pub fn rotation(di: Arc<DiLattice>) -> Induction {
    let atoms: Vec<Elem> = di.lattice().atoms().iter().collect();
    let images: Vec<(Elem, ElemSet)> = atoms
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, di.principal(atoms[(i + 1) % atoms.len()]).members()))
        .collect();
    Induction::from_images(di, "rotate", &images).expect("a permutation of atoms is continuous")
}

pub fn note13() -> Induction {
    catalog::make_note13().induction
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(di("photon").len(), 16);
        let e = rotation(di("mo3"));
        assert!(e.laws(&Caps::default()).unwrap().holds());
        assert!(!note13().is_freeze());
    }
}
