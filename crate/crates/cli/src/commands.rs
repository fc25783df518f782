//! One function per subcommand. Each loads its inputs, runs the checks and
//! returns an [`Outcome`]; printing and exit codes are left to `main`.

use std::fs;
use std::path::Path;

use oqlkit_core::catalog::{self, CatalogObject};
use oqlkit_core::dsl::{check_valid, eval_formula, parse_formula, parse_model, Model};
use oqlkit_core::{quantale_of_induction, Caps, Direction, FiniteQuantale, LawReport, LawSet, QuantaleError};
use serde_json::{json, Value};

use crate::output::Outcome;
use crate::CliError;

fn load(path: &Path, caps: Caps) -> Result<Model, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_model(&text, caps).map_err(|source| CliError::Model { path: shown, source })
}

#[derive(Debug, Clone, Copy)]
pub struct CheckFlags {
    pub ortho: bool,
    pub omod: bool,
    pub atomistic: bool,
    pub separating: bool,
}

pub fn check(path: &Path, caps: Caps, flags: CheckFlags) -> Result<Outcome, CliError> {
    let model = load(path, caps)?;
    let l = model.lattice();
    let mut out = Outcome::new("check");
    let any = flags.ortho || flags.omod || flags.atomistic || flags.separating;
    // Without flags, run every check the model supports.
    let want_ortho = flags.ortho || (!any && model.ortho().is_some());
    let want_omod = flags.omod || (!any && model.ortho().is_some());
    let want_atomistic = flags.atomistic || !any;
    let want_separating = flags.separating || (!any && model.space().is_some());

    out.set("elements", l.len());
    out.set("atoms", l.atoms().len());
    out.line(format!("{} elements, {} atoms", l.len(), l.atoms().len()));

    let missing_ortho = || LawReport::fail("orthocomplemented", "no orthocomplement declared or derivable");
    if want_ortho {
        match model.ortho() {
            Some(o) => {
                out.laws.push(LawReport::pass("orthocomplemented"));
                out.laws.extend(filter_laws(o.laws(), &["de morgan"]));
            }
            None => out.laws.push(missing_ortho()),
        }
    }
    if want_omod {
        match model.ortho() {
            Some(o) => {
                out.laws.extend(filter_laws(o.laws(), &["orthomodular"]));
                let sasaki = o.sasaki_report();
                let witness = sasaki
                    .failures
                    .first()
                    .map(|&(a, c, b)| format!("a={}, c={}, b={}", l.name(a), l.name(c), l.name(b)));
                out.laws.note(LawReport {
                    law: "sasaki adjunction for every a".into(),
                    holds: sasaki.adjunction_everywhere,
                    witness,
                });
                out.set("sasaki_matches_orthomodularity", sasaki.equivalence_holds());
            }
            None => out.laws.push(missing_ortho()),
        }
    }
    if want_atomistic {
        out.laws
            .push(LawReport::from_violation("atomistic", l.atomistic_violation(), |x| {
                format!("{} is not a join of atoms", l.name(x))
            }));
    }
    if want_separating {
        out.laws.push(match model.space() {
            Some(space) => {
                let space = space.as_closure();
                let names = space.state_names();
                let first_open = (0..names.len()).find(|&i| {
                    let single = oqlkit_core::StateSet::singleton(oqlkit_core::Elem::new(i));
                    !space.is_closed(single)
                });
                LawReport::from_violation("separating", first_open, |i| format!("{{{}}} is not closed", names[i]))
            }
            None => LawReport::fail("separating", "no state space declared"),
        });
    }
    Ok(out)
}

fn filter_laws(set: LawSet, names: &[&str]) -> LawSet {
    let mut out = LawSet::new();
    for law in set.laws.into_iter().filter(|l| names.contains(&l.law.as_str())) {
        out.push(law);
    }
    out
}

pub fn di(path: &Path, caps: Caps, list: bool, count: bool) -> Result<Outcome, CliError> {
    let model = load(path, caps)?;
    let di = model.di().map_err(|source| CliError::Model {
        path: path.display().to_string(),
        source,
    })?;
    let mut out = Outcome::new("di");
    out.laws = di.heyting_laws(&caps)?;
    let iso = "atom view is an order isomorphism";
    if di.lattice().is_atomistic() {
        out.laws
            .push(LawReport::from_violation(iso, di.atom_iso_violation()?, |w| w));
    } else {
        out.laws.note(LawReport::fail(iso, "lattice is not atomistic"));
    }
    let ideals: Vec<String> = di.ideals().iter().map(|&a| di.format(a)).collect();
    out.set("count", ideals.len());
    out.set("boolean", di.boolean_violation().is_none());
    if list {
        out.set("ideals", ideals.clone());
    }
    if count {
        out.line(ideals.len().to_string());
    }
    if list {
        out.lines.extend(ideals);
    }
    if count || list {
        out.show_laws = false;
    } else {
        out.line(format!("{} distributive ideals", di.len()));
    }
    Ok(out)
}

pub fn eval(path: &Path, caps: Caps, formula: &str, valid: bool) -> Result<Outcome, CliError> {
    let model = load(path, caps)?;
    let f = parse_formula(formula, &model).map_err(CliError::Input)?;
    let di = model.di().map_err(CliError::Input)?;
    let value = eval_formula(&f, &model).map_err(CliError::Input)?;
    let l = model.lattice();
    let mut out = Outcome::new("eval");
    out.show_laws = false;
    out.set("formula", f.to_string());
    out.set("ideal", di.format(value));
    out.set(
        "members",
        value.members().iter().map(|x| l.name(x).to_owned()).collect::<Vec<_>>(),
    );
    let is_valid = check_valid(&f, &model).map_err(CliError::Input)?;
    out.set("valid", is_valid);
    if valid {
        out.laws.push(if is_valid {
            LawReport::pass("valid")
        } else {
            LawReport::fail("valid", di.format(value))
        });
        out.line(if is_valid { "valid" } else { "not valid" });
    } else {
        out.line(di.format(value));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct DynFlags {
    pub continuity: bool,
    pub adjoint: bool,
    pub inverse_compare: bool,
    pub strict_inverse: bool,
}

const CONTINUITY_LAWS: &[&str] = &["join continuity", "join continuity via resolution"];
const ADJOINT_LAWS: &[&str] = &[
    "ê* ⊣ ê_*",
    "triangle identities for ê* ⊣ ê_*",
    "ē* ⊣ ē_*",
    "triangle identities for ē* ⊣ ē_*",
];

pub fn dynamics(path: &Path, caps: Caps, name: &str, flags: DynFlags) -> Result<Outcome, CliError> {
    let model = load(path, caps)?;
    let e = model.induction(name).map_err(CliError::Input)?;
    let di = e.di();
    let l = e.lattice();
    let all = e.laws(&caps)?;
    let mut out = Outcome::new("dyn");
    out.set("induction", e.name());
    let sections = flags.continuity || flags.adjoint || flags.inverse_compare;
    if !sections {
        out.laws = all.clone();
    }
    if flags.continuity {
        out.laws.extend(filter_laws(all.clone(), CONTINUITY_LAWS));
        out.set(
            "continuity",
            serde_json::to_value(e.continuity()).expect("serializable"),
        );
    }
    if flags.adjoint {
        out.laws.extend(filter_laws(all.clone(), ADJOINT_LAWS));
        let ideals: Vec<Value> = di
            .ideals()
            .iter()
            .map(|&a| {
                json!({
                    "ideal": di.format(a),
                    "propagate": di.format(e.propagate(a)),
                    "causate": di.format(e.causate(a)),
                })
            })
            .collect();
        let props: Vec<Value> = l
            .elements()
            .map(|a| {
                json!({
                    "element": l.name(a),
                    "propagate": l.name(e.propagate_property(a)),
                    "causate": l.name(e.causate_property(a)),
                })
            })
            .collect();
        for row in &ideals {
            out.line(format!(
                "{}  ê* {}  ê_* {}",
                row["ideal"].as_str().unwrap_or_default(),
                row["propagate"].as_str().unwrap_or_default(),
                row["causate"].as_str().unwrap_or_default()
            ));
        }
        for row in &props {
            out.line(format!(
                "{}  ē* {}  ē_* {}",
                row["element"].as_str().unwrap_or_default(),
                row["propagate"].as_str().unwrap_or_default(),
                row["causate"].as_str().unwrap_or_default()
            ));
        }
        out.set("ideal_table", ideals);
        out.set("property_table", props);
    }
    if flags.inverse_compare {
        let cmp = e.compare_inverse_vs_adjoint();
        let render = |w: &oqlkit_core::dynamics::ContinuityWitness| w.to_string();
        out.laws.push(LawReport::from_violation(
            "adjoint continuity",
            cmp.induction_continuity.as_ref(),
            render,
        ));
        let inverse = LawReport::from_violation("inverse continuity", cmp.inverse_continuity.as_ref(), render);
        if flags.strict_inverse {
            out.laws.push(inverse);
        } else {
            out.laws.note(inverse);
        }
        out.laws.note(LawReport::from_violation(
            "atomwise adjoint continuity",
            cmp.adjoint_continuity.as_ref(),
            render,
        ));
        for row in cmp.rows.iter().filter(|r| r.differs) {
            out.line(format!(
                "{}  inverse {}  adjoint {}",
                row.atoms, row.inverse, row.adjoint
            ));
        }
        out.set("inverse_compare", serde_json::to_value(&cmp).expect("serializable"));
    }
    Ok(out)
}

pub fn quantale(path: &Path, caps: Caps, name: &str, direction: Direction, girard: bool) -> Result<Outcome, CliError> {
    let model = load(path, caps)?;
    let e = model.induction(name).map_err(CliError::Input)?;
    let q = quantale_of_induction(e, direction, &caps)?;
    let mut out = Outcome::new("quantale");
    out.set("induction", e.name());
    out.set("direction", serde_json::to_value(direction).expect("serializable"));
    out.set("elements", q.table.lattice().len());
    out.laws = q.report.clone();
    if girard {
        let l = q.table.lattice().clone();
        match FiniteQuantale::new(q.table.clone()).and_then(|fq| Ok((fq.dualizing_elements()?, fq))) {
            Ok((dualizing, fq)) => {
                let names: Vec<Value> = dualizing
                    .iter()
                    .map(|d| json!({ "element": l.name(d.element), "cyclic": d.cyclic }))
                    .collect();
                out.set("dualizing", names);
                let cyclic: Vec<_> = dualizing.iter().filter(|d| d.cyclic).collect();
                match cyclic.first() {
                    Some(d) => {
                        out.laws.push(LawReport::pass("girard"));
                        out.set("girard_bottom", l.name(d.element));
                        out.laws.extend(fq.linear_laws(d.element)?);
                    }
                    None => out.laws.push(LawReport::fail("girard", "no cyclic dualizing element")),
                }
            }
            Err(err @ (QuantaleError::NotAQuantale(_) | QuantaleError::NotUnital)) => {
                out.laws.push(LawReport::fail("girard", err.to_string()));
            }
            Err(err) => return Err(err.into()),
        }
    }
    Ok(out)
}

pub fn catalog(name: Option<&str>, output: Option<&Path>) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("catalog");
    out.show_laws = false;
    let Some(name) = name else {
        let entries = catalog::entries();
        for entry in &entries {
            out.line(format!("{:<10} {}", entry.name, entry.description));
        }
        out.set("entries", serde_json::to_value(&entries).expect("serializable"));
        return Ok(out);
    };
    let obj: CatalogObject = catalog::build(name)?;
    let text = obj.to_model_file().unparse();
    match output {
        Some(path) => {
            fs::write(path, &text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            out.line(format!("wrote {}", path.display()));
            out.set("path", path.display().to_string());
        }
        None => out.lines.push(text.trim_end().to_owned()),
    }
    out.set("name", name);
    Ok(out)
}
