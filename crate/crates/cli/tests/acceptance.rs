//! Acceptance criteria 1-9. Each criterion is one test that prints a single
//! `acceptance N: PASS|FAIL` line and then fails if any check did.
//!
//! Derived values are cross-checked against the brute-force references in
//! `oqlkit_core::oracle`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use oqlkit_core::catalog::{self, CatalogObject};
use oqlkit_core::dsl::ModelFile;
use oqlkit_core::{
    enumerate_di, oracle, quantale_of_induction, Caps, DiLattice, Direction, ElemSet, FiniteLattice, FiniteQuantale,
    Induction, InductionAlgebra, PropertySet, StateClosure,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Prints the verdict outside the test harness's capture, then asserts.
fn verdict(n: u32, title: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "acceptance {n} ({title}): {status}").unwrap();
    for f in failures {
        writeln!(out, "    {f}").unwrap();
    }
    drop(out);
    assert!(failures.is_empty(), "acceptance {n} failed:\n{}", failures.join("\n"));
}

fn expect(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn di_of(l: &FiniteLattice) -> Arc<DiLattice> {
    Arc::new(enumerate_di(l, &Caps::default()).expect("DI enumerates"))
}

fn law_failures(label: &str, set: &oqlkit_core::LawSet) -> Vec<String> {
    set.failures()
        .map(|l| format!("{label}: {} fails at {}", l.law, l.witness.as_deref().unwrap_or("?")))
        .collect()
}

/// Inductions act on atomistic lattices only.
fn atomistic_catalog_objects() -> Vec<(&'static str, CatalogObject)> {
    let mut v = catalog_objects();
    v.retain(|(_, o)| o.lattice().is_atomistic());
    v
}

fn catalog_objects() -> Vec<(&'static str, CatalogObject)> {
    catalog::entries()
        .into_iter()
        .map(|e| (e.name, catalog::build(e.name).expect("catalog entry builds")))
        .collect()
}

#[test]
fn acceptance_1_photon_golden() {
    let mut f = Vec::new();
    let photon = catalog::make_photon();
    let l = photon.lattice();
    let el = |n: &str| l.resolve(n).unwrap();
    let (a, b, a_) = (el("a"), el("b"), el("a'"));
    let lhs = l.meet(a, l.join(b, a_));
    expect(&mut f, lhs == a, format!("a ∧ (b ∨ a') = {}, expected a", l.name(lhs)));
    let rhs = l.join(l.meet(a, b), l.meet(a, a_));
    expect(
        &mut f,
        rhs == el("0"),
        format!("(a ∧ b) ∨ (a ∧ a') = {}, expected 0", l.name(rhs)),
    );
    expect(&mut f, lhs != rhs, "distributivity unexpectedly holds");
    // Same values through the scanning oracle.
    expect(
        &mut f,
        oracle::meet(
            l,
            ElemSet::singleton(a).with(oracle::join(l, ElemSet::singleton(b).with(a_))),
        ) == a,
        "oracle disagrees on a ∧ (b ∨ a')",
    );
    expect(
        &mut f,
        photon.laws().get("de morgan").is_some_and(|r| r.holds),
        "photon fails De Morgan",
    );
    for x in l.elements() {
        let o = photon.ortho(x);
        expect(
            &mut f,
            photon.ortho(o) == x,
            format!("{}'' != {}", l.name(x), l.name(x)),
        );
        expect(
            &mut f,
            l.meet(x, o) == l.bottom(),
            format!("{} ∧ {}' != 0", l.name(x), l.name(x)),
        );
        expect(
            &mut f,
            l.join(x, o) == l.top(),
            format!("{} ∨ {}' != 1", l.name(x), l.name(x)),
        );
    }
    expect(&mut f, photon.is_orthomodular(), "photon is not orthomodular");
    verdict(1, "photon golden values", &f);
}

#[test]
fn acceptance_2_note13() {
    let mut f = Vec::new();
    let n13 = catalog::make_note13();
    let names = n13.space.state_names().to_vec();
    let listed: Vec<&[&str]> = vec![
        &[],
        &["p"],
        &["q"],
        &["r"],
        &["s"],
        &["q", "r", "s"],
        &["p", "q", "r", "s"],
    ];
    let mut expected: Vec<ElemSet> = listed
        .iter()
        .map(|set| {
            set.iter()
                .map(|s| oqlkit_core::Elem::new(names.iter().position(|n| n == s).unwrap()))
                .collect()
        })
        .collect();
    let mut got = n13.space.closed_sets();
    expected.sort_by_key(|s| s.bits());
    got.sort_by_key(|s| s.bits());
    expect(
        &mut f,
        got == expected,
        format!("closed sets {got:?}, expected {expected:?}"),
    );

    let e = &n13.induction;
    let cont = e.continuity();
    expect(
        &mut f,
        cont.holds(),
        format!("ê* is not continuous: {:?}", cont.join_form),
    );

    let cmp = e.compare_inverse_vs_adjoint();
    match &cmp.inverse_continuity {
        Some(w) => {
            expect(
                &mut f,
                (w.a.as_str(), w.b.as_str()) == ("{q, r}", "{r, s}"),
                format!("inverse witness pair is ({}, {})", w.a, w.b),
            );
            expect(
                &mut f,
                (w.image_join_a.as_str(), w.image_join_b.as_str()) == ("1", "qrs"),
                format!("inverse image joins are ({}, {})", w.image_join_a, w.image_join_b),
            );
        }
        None => f.push("relational inverse passes continuity".into()),
    }
    // Recompute the witness images by hand.
    let l = e.lattice();
    let atoms = |ns: &[&str]| -> ElemSet { ns.iter().map(|n| l.resolve(n).unwrap()).collect() };
    let (qr, rs) = (atoms(&["q", "r"]), atoms(&["r", "s"]));
    expect(
        &mut f,
        l.join_set(qr) == l.join_set(rs),
        "{q,r} and {r,s} have different joins",
    );
    expect(
        &mut f,
        l.join_set(e.relational_inverse(qr)) == l.top(),
        "inverse({q,r}) does not join to 1",
    );
    expect(
        &mut f,
        l.join_set(e.relational_inverse(rs)) == l.resolve("qrs").unwrap(),
        "inverse({r,s}) does not join to qrs",
    );
    verdict(2, "note13 continuity and inverse witness", &f);
}

/// Catalog lattices with at most 12 elements: every entry plus the larger
/// members of the parameterised families.
fn small_catalog_lattices() -> Vec<(String, FiniteLattice)> {
    let mut v: Vec<(String, FiniteLattice)> = catalog_objects()
        .into_iter()
        .map(|(n, o)| (n.to_owned(), o.lattice().clone()))
        .collect();
    for name in ["mo4", "mo5", "chain5", "chain12"] {
        v.push((name.to_owned(), catalog::build(name).unwrap().lattice().clone()));
    }
    v.retain(|(_, l)| l.len() <= 12);
    v
}

#[test]
fn acceptance_3_di_completion() {
    let mut f = Vec::new();
    let caps = Caps::default();
    let photon = catalog::make_photon();
    let di = di_of(photon.lattice());
    expect(&mut f, di.len() == 16, format!("|DI(MO(2))| = {}", di.len()));
    expect(&mut f, di.boolean_violation().is_none(), "DI(MO(2)) is not Boolean");
    let as_l = di.as_lattice().unwrap();
    expect(&mut f, as_l.is_atomistic(), "DI(MO(2)) is not atomistic");
    expect(&mut f, as_l.is_distributive(), "DI(MO(2)) is not distributive");
    match di.atom_iso_violation() {
        Ok(None) => {}
        Ok(Some(w)) => f.push(format!("atom iso fails: {w}")),
        Err(e) => f.push(format!("atom iso error: {e}")),
    }

    for (name, l) in small_catalog_lattices() {
        let mut oc = oracle::ClosureOracle::new(&l);
        let mut bad = 0usize;
        let mut first = None;
        for s in l.all().subsets() {
            let engine = oqlkit_core::di_closure(&l, s, &caps).unwrap().members();
            let reference = oc.closure(s);
            if engine != reference {
                bad += 1;
                first.get_or_insert((s, engine, reference));
            }
        }
        if let Some((s, a, b)) = first {
            f.push(format!(
                "{name}: {bad} subsets differ, first {} -> engine {} vs oracle {}",
                l.format_set(s),
                l.format_set(a),
                l.format_set(b)
            ));
        }
    }
    verdict(3, "distributive-ideal completion", &f);
}

#[test]
fn acceptance_4_heyting() {
    let mut f = Vec::new();
    let caps = Caps::default();
    for (name, obj) in catalog_objects() {
        let di = di_of(obj.lattice());
        f.extend(law_failures(name, &di.heyting_laws(&caps).unwrap()));
        // Independent implication: largest ideal C with A ∩ C ⊆ B.
        let ids: Vec<ElemSet> = oracle::di_ideals(obj.lattice());
        let top = di.top();
        for &a in di.ideals() {
            for &b in di.ideals() {
                let imp = di.implies(a, b);
                let reference = oracle::heyting_implication(&ids, a.members(), b.members());
                if imp.members() != reference {
                    f.push(format!(
                        "{name}: {} → {} differs from the oracle",
                        di.format(a),
                        di.format(b)
                    ));
                }
                if (imp == top) != a.is_subset(b) {
                    f.push(format!(
                        "{name}: entailment fails for {} and {}",
                        di.format(a),
                        di.format(b)
                    ));
                }
            }
        }
    }
    verdict(4, "Heyting laws on DI", &f);
}

/// Draws `n` continuous inductions on random atomistic lattices with at
/// most 6 atoms.
fn random_inductions(seed: u64, n: usize) -> Vec<Induction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let l = oracle::random_atomistic_lattice(&mut rng, 6);
        let di = di_of(&l);
        if let Some(e) = oracle::random_induction(&mut rng, &di, 200) {
            out.push(e);
        }
    }
    out
}

fn check_induction(label: &str, e: &Induction, f: &mut Vec<String>) {
    let caps = Caps::default();
    let laws = e.laws(&caps).unwrap();
    f.extend(law_failures(label, &laws));
    if e.is_freeze() && laws.get("freeze: A →ᵉ B = A → B").is_none() && e.freeze_reductions().laws.is_empty() {
        f.push(format!("{label}: freeze reductions were not checked"));
    }
    // Causation against the atomwise reference on small lattices.
    let l = e.lattice();
    if l.len() <= 12 {
        let images: Vec<_> = e.atom_images().iter().map(|&(p, img)| (p, img.members())).collect();
        for &b in e.di().ideals() {
            let reference = oracle::causate_by_atoms(l, &images, b.members());
            if e.causate(b).members() != reference {
                f.push(format!("{label}: ê_*({}) differs from the oracle", e.di().format(b)));
            }
        }
    }
}

#[test]
fn acceptance_5_dynamics() {
    let mut f = Vec::new();
    for (name, obj) in atomistic_catalog_objects() {
        let freeze = Induction::freeze(di_of(obj.lattice())).unwrap();
        check_induction(&format!("{name}/freeze"), &freeze, &mut f);
        let reductions = freeze.freeze_reductions();
        expect(
            &mut f,
            !reductions.laws.is_empty(),
            format!("{name}: no freeze reductions"),
        );
        f.extend(law_failures(&format!("{name}/freeze reductions"), &reductions));
    }
    let n13 = catalog::make_note13();
    check_induction("note13/e", &n13.induction, &mut f);
    for (i, e) in random_inductions(0x5eed, 50).iter().enumerate() {
        check_induction(&format!("random #{i} ({} elements)", e.lattice().len()), e, &mut f);
    }
    verdict(5, "induction laws", &f);
}

#[test]
fn acceptance_6_sasaki() {
    let mut f = Vec::new();
    let mut failing = Vec::new();
    for name in ["boolean2", "boolean3", "photon", "mo3", "o6"] {
        let obj = catalog::build(name).unwrap();
        let o = obj.ortho().expect("orthocomplemented entry");
        let rep = o.sasaki_report();
        expect(
            &mut f,
            rep.equivalence_holds(),
            format!(
                "{name}: adjunction {} but orthomodular {}",
                rep.adjunction_everywhere, rep.orthomodular
            ),
        );
        if !rep.adjunction_everywhere {
            failing.push(name);
        }
    }
    expect(
        &mut f,
        failing == ["o6"],
        format!("adjunction fails on {failing:?}, expected only o6"),
    );
    verdict(6, "Sasaki adjunction vs orthomodularity", &f);
}

#[test]
fn acceptance_7_quantales() {
    let mut f = Vec::new();
    let caps = Caps::default();
    let mut inductions: Vec<(String, Induction)> = atomistic_catalog_objects()
        .into_iter()
        .map(|(n, o)| (format!("{n}/freeze"), Induction::freeze(di_of(o.lattice())).unwrap()))
        .collect();
    inductions.push(("note13/e".into(), catalog::make_note13().induction));
    for (label, e) in &inductions {
        let fwd = quantale_of_induction(e, Direction::Fwd, &caps).unwrap();
        f.extend(law_failures(&format!("{label} fwd"), &fwd.report));
        let bwd = quantale_of_induction(e, Direction::Bwd, &caps).unwrap();
        f.extend(law_failures(&format!("{label} bwd"), &bwd.report));
    }
    for n in 1..=3 {
        let l = catalog::make_boolean(n).unwrap().into_lattice();
        let q = FiniteQuantale::locale(l).unwrap();
        let bot = q.lattice().bottom();
        match q.girard_bottom() {
            Ok(Some(b)) => expect(&mut f, b == bot, format!("2^{n}: Girard ⊥ is not 0")),
            other => f.push(format!("2^{n}: not Girard ({other:?})")),
        }
        f.extend(law_failures(
            &format!("2^{n} linear laws"),
            &q.linear_laws(bot).unwrap(),
        ));
        for a in q.lattice().elements() {
            let (post, _) = q.linear_negations(bot, a).unwrap();
            let (post2, _) = q.linear_negations(bot, post).unwrap();
            expect(&mut f, post2 == a, format!("2^{n}: a^⊥^⊥ != a"));
            for b in q.lattice().elements() {
                let lhs = q.linear_negations(bot, q.product(a, b)).unwrap().0;
                let (bp, ap) = (q.linear_negations(bot, b).unwrap().0, post);
                expect(
                    &mut f,
                    lhs == q.par(bot, bp, ap).unwrap(),
                    format!("2^{n}: (a⊗b)^⊥ != b^⊥ ℘ a^⊥"),
                );
            }
        }
    }
    let chain = FiniteQuantale::locale(catalog::make_chain(3).unwrap()).unwrap();
    let dualizing = chain.dualizing_elements().unwrap();
    expect(
        &mut f,
        dualizing.is_empty(),
        format!("3-chain has dualizing elements {dualizing:?}"),
    );
    verdict(7, "quantale laws", &f);
}

#[test]
fn acceptance_8_module_action() {
    let mut f = Vec::new();
    let caps = Caps::default();
    let n13 = catalog::make_note13();
    let freeze = Induction::freeze(n13.induction.di().clone()).unwrap();
    let alg = InductionAlgebra::generate(&[freeze, n13.induction.clone()], &caps).unwrap();
    expect(&mut f, alg.len() >= 2, format!("algebra has {} members", alg.len()));
    f.extend(law_failures("module action", &alg.module_action_check().unwrap()));
    // Spot-check the two identities directly on every member pair.
    let props: Vec<PropertySet> = n13.induction.di().ideals().to_vec();
    let di = n13.induction.di();
    for e1 in alg.members() {
        for e2 in alg.members() {
            let seq = e1.concat(e2).unwrap();
            let alt = Induction::choice(&[e1, e2]).unwrap();
            for &a in &props {
                expect(
                    &mut f,
                    seq.causate(a) == e1.causate(e2.causate(a)),
                    format!("({} & {}).{} differs", e1.name(), e2.name(), di.format(a)),
                );
                expect(
                    &mut f,
                    alt.causate(a) == di.meet(e1.causate(a), e2.causate(a)),
                    format!("({} | {}).{} differs", e1.name(), e2.name(), di.format(a)),
                );
            }
        }
    }
    verdict(8, "module action", &f);
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn oqlkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_oqlkit"))
        .args(args)
        .current_dir(fixtures())
        .env_remove(Caps::ENV_VAR)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

/// Every law entry is `{law, holds, witness?}` and failures carry a witness.
fn schema_errors(json: &Value) -> Vec<String> {
    let mut errs = Vec::new();
    for key in ["laws", "info"] {
        for entry in json[key].as_array().into_iter().flatten() {
            let obj = entry.as_object().unwrap();
            let keys_ok = obj.keys().all(|k| ["law", "holds", "witness"].contains(&k.as_str()));
            if !keys_ok || !obj["law"].is_string() || !obj["holds"].is_boolean() {
                errs.push(format!("bad law entry {entry}"));
            }
            if obj["holds"] == false && !obj.get("witness").is_some_and(Value::is_string) {
                errs.push(format!("failed law without witness {entry}"));
            }
        }
    }
    errs
}

#[test]
fn acceptance_9_cli() {
    let mut f = Vec::new();
    let cases: &[(&[&str], i32)] = &[
        (&["check", "photon.oql", "--omod"], 0),
        (&["check", "photon.oql", "--ortho", "--atomistic"], 0),
        (&["check", "o6.oql", "--omod"], 1),
        (&["check", "note13.oql", "--separating", "--atomistic"], 0),
        (&["di", "photon.oql", "--count"], 0),
        (&["di", "note13.oql", "--list"], 0),
        (&["eval", "photon.oql", "--formula", "dn(a) -> dn(b)"], 0),
        (
            &["eval", "photon.oql", "--formula", "top -[freeze]-> top", "--valid"],
            0,
        ),
        (&["eval", "photon.oql", "--formula", "dn(a)", "--valid"], 1),
        (&["dyn", "note13.oql", "--induction", "e"], 0),
        (&["dyn", "note13.oql", "--induction", "e", "--inverse-compare"], 0),
        (
            &[
                "dyn",
                "note13.oql",
                "--induction",
                "e",
                "--inverse-compare",
                "--strict-inverse",
            ],
            1,
        ),
        (
            &[
                "dyn",
                "photon_flip.oql",
                "--induction",
                "flip",
                "--continuity",
                "--adjoint",
            ],
            0,
        ),
        (&["quantale", "boolean2.oql", "--induction", "freeze", "--girard"], 0),
        (&["quantale", "note13.oql", "--induction", "e", "--direction", "bwd"], 0),
        (&["quantale", "note13.oql", "--induction", "e"], 1),
        (&["dyn", "chain3.oql", "--induction", "freeze"], 2),
        (&["check", "invalid/cyclic.oql"], 2),
        (&["check", "invalid/syntax.oql"], 2),
        (&["dyn", "photon.oql", "--induction", "nope"], 2),
        (&["eval", "photon.oql", "--formula", "dn(zz)"], 2),
    ];
    for (args, code) in cases {
        let (got, _) = oqlkit(args);
        expect(&mut f, got == *code, format!("{args:?}: exit {got}, expected {code}"));
        let mut json_args = vec!["--json"];
        json_args.extend_from_slice(args);
        let (got, stdout) = oqlkit(&json_args);
        expect(
            &mut f,
            got == *code,
            format!("--json {args:?}: exit {got}, expected {code}"),
        );
        match serde_json::from_str::<Value>(&stdout) {
            Ok(json) => {
                let want = match code {
                    0 => "pass",
                    1 => "fail",
                    _ => "error",
                };
                expect(
                    &mut f,
                    json["verdict"] == want,
                    format!("{args:?}: verdict {}", json["verdict"]),
                );
                expect(
                    &mut f,
                    json["command"] == args[0],
                    format!("{args:?}: command {}", json["command"]),
                );
                f.extend(schema_errors(&json).into_iter().map(|e| format!("{args:?}: {e}")));
            }
            Err(e) => f.push(format!("{args:?}: output is not JSON ({e})")),
        }
    }

    let (_, count) = oqlkit(&["di", "photon.oql", "--count"]);
    expect(
        &mut f,
        count.lines().next() == Some("16"),
        format!("di --count printed {count:?}"),
    );
    let (_, ideal) = oqlkit(&["--json", "eval", "photon.oql", "--formula", "dn(a) -> dn(b)"]);
    let ideal: Value = serde_json::from_str(&ideal).unwrap();
    expect(
        &mut f,
        ideal["ideal"] == "{0, b, a', b'}",
        format!("dn(a) -> dn(b) = {}", ideal["ideal"]),
    );
    let (_, inv) = oqlkit(&["--json", "dyn", "note13.oql", "--induction", "e", "--inverse-compare"]);
    let inv: Value = serde_json::from_str(&inv).unwrap();
    let w = &inv["inverse_compare"]["inverse_continuity"];
    expect(
        &mut f,
        w["a"] == "{q, r}" && w["b"] == "{r, s}",
        format!("inverse witness {w}"),
    );

    let mut files = Vec::new();
    for dir in [fixtures(), fixtures().join("invalid")] {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.extension().is_some_and(|e| e == "oql") {
                files.push(path);
            }
        }
    }
    expect(&mut f, files.len() >= 10, format!("only {} fixtures", files.len()));
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        match ModelFile::parse(&text) {
            Ok(m) if m.unparse() == text => {}
            Ok(m) => f.push(format!("{}: unparse differs:\n{}", path.display(), m.unparse())),
            // Syntax errors are the point of this fixture.
            Err(_) if path.ends_with("invalid/syntax.oql") => {}
            Err(e) => f.push(format!("{}: {e}", path.display())),
        }
    }
    verdict(9, "CLI end to end", &f);
}
