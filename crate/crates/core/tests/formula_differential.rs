//! Random formulas evaluated by the DSL against the same operations called
//! directly on catalog objects.

use std::sync::Arc;

use oqlkit_core::catalog;
use oqlkit_core::dsl::{eval_formula, parse_formula, parse_model, Formula};
use oqlkit_core::{enumerate_di, Caps, DiLattice, Induction, PropertySet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Direct {
    di: Arc<DiLattice>,
    inductions: Vec<Induction>,
}

impl Direct {
    fn induction(&self, name: &str) -> &Induction {
        self.inductions.iter().find(|e| e.name() == name).unwrap()
    }
}

/// Builds a random formula together with its value computed directly.
fn random_formula(rng: &mut ChaCha8Rng, d: &Direct, depth: u32) -> (Formula, PropertySet) {
    let di = &d.di;
    let l = di.lattice();
    let names = l.names();
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..4) {
            0 => {
                let x = rng.gen_range(0..l.len());
                (Formula::Down(names[x].clone()), di.principal(oqlkit_core::Elem::new(x)))
            }
            1 => {
                let picked: Vec<usize> = (0..l.len()).filter(|_| rng.gen_bool(0.3)).collect();
                let set = picked.iter().map(|&i| oqlkit_core::Elem::new(i)).collect();
                (
                    Formula::Set(picked.iter().map(|&i| names[i].clone()).collect()),
                    di.closure(set),
                )
            }
            2 => (Formula::Top, di.top()),
            _ => (Formula::Bot, di.bottom()),
        };
    }
    let e = d.inductions.choose(rng).unwrap();
    let name = e.name().to_owned();
    let (fa, a) = random_formula(rng, d, depth - 1);
    match rng.gen_range(0..10) {
        0 => (Formula::Neg(Box::new(fa)), di.negation(a)),
        1 => (Formula::Resolution(Box::new(fa)), di.resolution(a)),
        k => {
            let (fb, b) = random_formula(rng, d, depth - 1);
            let (fa, fb) = (Box::new(fa), Box::new(fb));
            let e = d.induction(&name);
            match k {
                2 => (Formula::Meet(fa, fb), di.meet(a, b)),
                3 => (Formula::Join(fa, fb), di.join(a, b)),
                4 => (Formula::Impl(fa, fb), di.implies(a, b)),
                5 => (Formula::FwdImpl(name, fa, fb), e.dyn_impl_fwd(a, b)),
                6 => (Formula::BwdImpl(name, fa, fb), e.dyn_impl_bwd(a, b)),
                7 => (Formula::FwdTensor(name, fa, fb), e.dyn_tensor_fwd(a, b)),
                _ => (Formula::BwdTensor(name, fa, fb), e.dyn_tensor_bwd(a, b)),
            }
        }
    }
}

fn direct_for(entry: &str) -> Direct {
    let caps = Caps::default();
    if entry == "note13" {
        let n = catalog::make_note13();
        let di = n.induction.di().clone();
        let freeze = Induction::freeze(di.clone()).unwrap();
        return Direct {
            di,
            inductions: vec![n.induction, freeze],
        };
    }
    let obj = catalog::build(entry).unwrap();
    let di = Arc::new(enumerate_di(obj.lattice(), &caps).unwrap());
    Direct {
        inductions: vec![Induction::freeze(di.clone()).unwrap()],
        di,
    }
}

#[test]
fn evaluator_matches_direct_calls_on_1000_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let entries = ["photon", "note13", "boolean3", "mo3", "m3"];
    let mut checked = 0;
    for (k, entry) in entries.iter().enumerate() {
        let direct = direct_for(entry);
        let text = catalog::build(entry).unwrap().to_model_file().unparse();
        let model = parse_model(&text, Caps::default()).unwrap();
        let di = model.di().unwrap();
        let quota = 1000 / entries.len() + usize::from(k < 1000 % entries.len());
        for _ in 0..quota {
            let (f, expected) = random_formula(&mut rng, &direct, 4);
            let src = f.to_string();
            let parsed = parse_formula(&src, &model).unwrap_or_else(|e| panic!("{src}: {e}"));
            assert_eq!(parsed, f, "{src} does not parse back to itself");
            let got = eval_formula(&parsed, &model).unwrap();
            assert_eq!(
                di.format(got),
                direct.di.format(expected),
                "{entry}: {src} evaluates differently"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 1000);
}

#[test]
fn precedence_matches_explicit_parentheses() {
    let model = parse_model(
        &catalog::build("photon").unwrap().to_model_file().unparse(),
        Caps::default(),
    )
    .unwrap();
    let cases = [
        ("dn(a) \\/ dn(b) /\\ dn(a')", "(dn(a) \\/ (dn(b) /\\ dn(a')))"),
        ("dn(a) -> dn(b) -> dn(a)", "(dn(a) -> (dn(b) -> dn(a)))"),
        ("~dn(a) /\\ dn(b)", "(~dn(a) /\\ dn(b))"),
        (
            "dn(a) (x)[freeze] dn(b) (x)[freeze] top",
            "((dn(a) (x)[freeze] dn(b)) (x)[freeze] top)",
        ),
        ("dn(a) /\\ dn(b) [freeze](x) top", "(dn(a) /\\ (dn(b) [freeze](x) top))"),
        ("dn(a) -[freeze]-> dn(b) \\/ bot", "(dn(a) -[freeze]-> (dn(b) \\/ bot))"),
        ("R(dn(a) \\/ dn(b))", "R((dn(a) \\/ dn(b)))"),
    ];
    for (loose, tight) in cases {
        let a = parse_formula(loose, &model).unwrap();
        let b = parse_formula(tight, &model).unwrap();
        assert_eq!(a, b, "{loose}");
        assert_eq!(a.to_string(), tight);
    }
}
