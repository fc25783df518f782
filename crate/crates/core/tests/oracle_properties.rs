//! Engine against the brute-force references on random atomistic lattices.

use std::sync::Arc;

use oqlkit_core::{
    di_closure, enumerate_di, oracle, quantale_of_induction, Caps, DiLattice, Direction, ElemSet, FiniteLattice,
    Induction,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice(seed: u64, atoms: usize) -> FiniteLattice {
    oracle::random_atomistic_lattice(&mut ChaCha8Rng::seed_from_u64(seed), atoms)
}

fn di(l: &FiniteLattice) -> Arc<DiLattice> {
    Arc::new(enumerate_di(l, &Caps::default()).unwrap())
}

fn induction(seed: u64, atoms: usize) -> Option<Induction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = oracle::random_atomistic_lattice(&mut rng, atoms);
    oracle::random_induction(&mut rng, &di(&l), 100)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_matches_oracle(seed in any::<u64>(), bits in any::<u64>()) {
        let l = lattice(seed, 4);
        prop_assume!(l.len() <= 12);
        let set = ElemSet::from_bits(bits) & l.all();
        let engine = di_closure(&l, set, &Caps::default()).unwrap().members();
        prop_assert_eq!(engine, oracle::di_closure(&l, set));
    }

    #[test]
    fn enumeration_matches_oracle(seed in any::<u64>()) {
        let l = lattice(seed, 4);
        prop_assume!(l.len() <= 12);
        let mut engine: Vec<ElemSet> = di(&l).ideals().iter().map(|p| p.members()).collect();
        engine.sort_by_key(|s| s.bits());
        prop_assert_eq!(engine, oracle::di_ideals(&l));
    }

    #[test]
    fn implication_matches_oracle(seed in any::<u64>()) {
        let l = lattice(seed, 4);
        prop_assume!(l.len() <= 12);
        let d = di(&l);
        let ids = oracle::di_ideals(&l);
        for &a in d.ideals() {
            for &b in d.ideals() {
                prop_assert_eq!(
                    d.implies(a, b).members(),
                    oracle::heyting_implication(&ids, a.members(), b.members())
                );
            }
        }
    }

    #[test]
    fn causation_matches_atomwise_reference(seed in any::<u64>()) {
        let Some(e) = induction(seed, 4) else { return Ok(()) };
        prop_assume!(e.lattice().len() <= 12);
        let images: Vec<_> = e.atom_images().iter().map(|&(p, img)| (p, img.members())).collect();
        for &b in e.di().ideals() {
            prop_assert_eq!(
                e.causate(b).members(),
                oracle::causate_by_atoms(e.lattice(), &images, b.members())
            );
        }
    }

    #[test]
    fn induction_laws_hold(seed in any::<u64>()) {
        let Some(e) = induction(seed, 5) else { return Ok(()) };
        let laws = e.laws(&Caps::default()).unwrap();
        let failures: Vec<_> = laws.failures().collect();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn concat_and_choice_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = oracle::random_atomistic_lattice(&mut rng, 4);
        let d = di(&l);
        let (Some(e1), Some(e2)) = (
            oracle::random_induction(&mut rng, &d, 100),
            oracle::random_induction(&mut rng, &d, 100),
        ) else { return Ok(()) };
        let seq = e1.concat(&e2).unwrap();
        let alt = Induction::choice(&[&e1, &e2]).unwrap();
        for &a in d.ideals() {
            prop_assert_eq!(seq.propagate(a), e2.propagate(e1.propagate(a)));
            prop_assert_eq!(alt.propagate(a), d.join(e1.propagate(a), e2.propagate(a)));
            prop_assert_eq!(seq.causate(a), e1.causate(e2.causate(a)));
            prop_assert_eq!(alt.causate(a), d.meet(e1.causate(a), e2.causate(a)));
        }
    }

    #[test]
    fn freeze_tensor_is_a_commutative_quantale(seed in any::<u64>()) {
        let l = lattice(seed, 4);
        let e = Induction::freeze(di(&l)).unwrap();
        let caps = Caps::default();
        prop_assert!(quantale_of_induction(&e, Direction::Fwd, &caps).unwrap().holds());
        prop_assert!(quantale_of_induction(&e, Direction::Bwd, &caps).unwrap().holds());
    }
}

#[test]
fn samplers_are_deterministic() {
    let a = lattice(7, 6);
    let b = lattice(7, 6);
    assert_eq!(a.names(), b.names());
    assert!(a.is_atomistic());
    let (e1, e2) = (induction(11, 5), induction(11, 5));
    assert_eq!(
        e1.map(|e| e.forward_table().to_vec()),
        e2.map(|e| e.forward_table().to_vec())
    );
}
