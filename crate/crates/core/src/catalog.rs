//! Built-in lattices and models with their expected invariants.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::dsl::{Item, ModelFile};
use crate::dynamics::{make_induction, DynError, Induction};
use crate::ideals::{enumerate_di, IdealError};
use crate::order::{build_lattice, FiniteLattice, LatticeError};
use crate::ortho::{attach_ortho, ClosureSpace, OrthoError, OrthoLattice, StateClosure};
use crate::set::MAX_ELEMENTS;
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error("no catalog entry named `{0}`")]
    UnknownEntry(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Dyn(#[from] DynError),
}

fn letter_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{i}")
    }
}

/// `MO(n)`: bottom, `n` complementary pairs of atoms, top. Elements are
/// ordered `0, a, b, .., a', b', .., 1`.
pub fn make_mo(n: usize) -> Result<OrthoLattice, CatalogError> {
    if n == 0 || 2 * n + 2 > MAX_ELEMENTS {
        return Err(CatalogError::SizeCapExceeded(format!(
            "MO({n}) needs 1 <= n <= {}",
            (MAX_ELEMENTS - 2) / 2
        )));
    }
    let atoms: Vec<String> = (0..n).map(letter_name).collect();
    let primes: Vec<String> = atoms.iter().map(|a| format!("{a}'")).collect();
    let mut names = vec!["0".to_owned()];
    names.extend(atoms.iter().cloned());
    names.extend(primes.iter().cloned());
    names.push("1".into());
    let mut pairs = Vec::new();
    for x in atoms.iter().chain(&primes) {
        pairs.push(("0".to_owned(), x.clone()));
        pairs.push((x.clone(), "1".to_owned()));
    }
    let l = build_lattice(&names, &pairs)?;
    let mut ortho = vec![("0".to_owned(), "1".to_owned())];
    ortho.extend(atoms.into_iter().zip(primes));
    Ok(attach_ortho(l, &ortho)?)
}

/// Two polarizer orientations `a, b` and their orthogonal partners.
pub fn make_photon() -> OrthoLattice {
    make_mo(2).expect("MO(2) is within caps")
}

/// The powerset of `n` atoms `a, b, ..`, ordered by bitmask, with set
/// complement. Elements are named by their atoms (`0` and `1` for the
/// extremes).
pub fn make_boolean(n: usize) -> Result<OrthoLattice, CatalogError> {
    if n > 6 {
        return Err(CatalogError::SizeCapExceeded(format!(
            "2^{n} elements exceed the cap of {MAX_ELEMENTS}"
        )));
    }
    let size = 1usize << n;
    let name = |m: usize| match m {
        0 => "0".to_owned(),
        _ if m == size - 1 => "1".to_owned(),
        _ => (0..n).filter(|i| m >> i & 1 == 1).map(letter_name).collect(),
    };
    let names: Vec<String> = (0..size).map(name).collect();
    let mut pairs = Vec::new();
    for m in 0..size {
        for i in 0..n {
            if m >> i & 1 == 0 {
                pairs.push((names[m].clone(), names[m | 1 << i].clone()));
            }
        }
    }
    let l = build_lattice(&names, &pairs)?;
    let ortho: Vec<(String, String)> = (0..size)
        .filter(|&m| m < (size - 1) ^ m)
        .map(|m| (names[m].clone(), names[(size - 1) ^ m].clone()))
        .collect();
    Ok(attach_ortho(l, &ortho)?)
}

/// The hexagon `0 < x < y < 1`, `0 < y' < x' < 1`: orthocomplemented but
/// not orthomodular.
pub fn make_o6() -> OrthoLattice {
    let l = build_lattice(
        &["0", "x", "y", "y'", "x'", "1"],
        &[
            ("0", "x"),
            ("x", "y"),
            ("y", "1"),
            ("0", "y'"),
            ("y'", "x'"),
            ("x'", "1"),
        ],
    )
    .expect("O6 is a lattice");
    attach_ortho(l, &[("0", "1"), ("x", "x'"), ("y", "y'")]).expect("O6 is orthocomplemented")
}

/// The diamond: three atoms, any two joining to the top.
pub fn make_m3() -> FiniteLattice {
    build_lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    .expect("M3 is a lattice")
}

/// The pentagon `0 < a < c < 1`, `0 < b < 1`.
pub fn make_n5() -> FiniteLattice {
    build_lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
    .expect("N5 is a lattice")
}

/// A chain of `n` elements: `0 < m < 1` for `n = 3`, otherwise
/// `0 < m1 < .. < 1`.
pub fn make_chain(n: usize) -> Result<FiniteLattice, CatalogError> {
    if n == 0 || n > MAX_ELEMENTS {
        return Err(CatalogError::SizeCapExceeded(format!("chain of {n} elements")));
    }
    let names: Vec<String> = match n {
        1 => vec!["0".into()],
        3 => vec!["0".into(), "m".into(), "1".into()],
        _ => std::iter::once("0".to_owned())
            .chain((1..n - 1).map(|i| format!("m{i}")))
            .chain(std::iter::once("1".to_owned()))
            .collect(),
    };
    let pairs: Vec<(String, String)> = names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Ok(build_lattice(&names, &pairs)?)
}

/// Four states `p, q, r, s` whose closed subsets are the singletons,
/// `{q, r, s}`, and the extremes, together with the induction sending
/// `p` to the ideal generated by `{p, q}` and fixing the other atoms.
#[derive(Debug, Clone)]
pub struct Note13 {
    pub space: ClosureSpace,
    pub lattice: FiniteLattice,
    pub induction: Induction,
}

pub fn make_note13() -> Note13 {
    let space = ClosureSpace::new(
        &["p", "q", "r", "s"],
        &[
            vec![],
            vec!["p"],
            vec!["q"],
            vec!["r"],
            vec!["s"],
            vec!["q", "r", "s"],
            vec!["p", "q", "r", "s"],
        ],
    )
    .expect("valid closure family");
    let (lattice, _) = space.closed_lattice().expect("closed sets form a lattice");
    let di = Arc::new(enumerate_di(&lattice, &Caps::default()).expect("within caps"));
    let images = [
        ("p", vec!["0", "p", "q"]),
        ("q", vec!["0", "q"]),
        ("r", vec!["0", "r"]),
        ("s", vec!["0", "s"]),
    ];
    let induction = make_induction(di, "e", &images).expect("valid induction");
    Note13 {
        space,
        lattice,
        induction,
    }
}

/// A built catalog object.
#[derive(Debug, Clone)]
pub enum CatalogObject {
    Ortho(OrthoLattice),
    Lattice(FiniteLattice),
    Note13(Box<Note13>),
}

impl CatalogObject {
    pub fn lattice(&self) -> &FiniteLattice {
        match self {
            CatalogObject::Ortho(o) => o.lattice(),
            CatalogObject::Lattice(l) => l,
            CatalogObject::Note13(n) => &n.lattice,
        }
    }

    pub fn ortho(&self) -> Option<&OrthoLattice> {
        match self {
            CatalogObject::Ortho(o) => Some(o),
            _ => None,
        }
    }

    /// The object as a model file in canonical form.
    pub fn to_model_file(&self) -> ModelFile {
        let l = self.lattice();
        let pair = |a: &str, b: &str| Item::new((a.to_owned(), b.to_owned()));
        let mut file = ModelFile {
            elements: Some(l.names().iter().cloned().map(Item::new).collect()),
            order: l
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| pair(l.name(a), l.name(b)))
                .collect(),
            ..ModelFile::default()
        };
        if let Some(o) = self.ortho() {
            file.ortho = Some(
                o.ortho_pairs()
                    .into_iter()
                    .map(|(a, b)| pair(l.name(a), l.name(b)))
                    .collect(),
            );
        }
        if let CatalogObject::Note13(n) = self {
            let names = n.space.state_names();
            file.states = Some(names.iter().cloned().map(Item::new).collect());
            file.closed = Some(
                n.space
                    .closed_sets()
                    .into_iter()
                    .map(|s| Item::new(s.iter().map(|x| names[x.index()].clone()).collect()))
                    .collect(),
            );
            let e = &n.induction;
            let images = e
                .atom_images()
                .iter()
                .map(|&(p, img)| {
                    let members = img.members().iter().map(|x| l.name(x).to_owned()).collect();
                    Item::new((l.name(p).to_owned(), members))
                })
                .collect();
            file.inductions.push(Item::new(crate::dsl::InductionDecl {
                name: e.name().to_owned(),
                images,
            }));
        }
        file
    }
}

/// Facts every catalog entry is expected to have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub elements: usize,
    pub atoms: usize,
    pub atomistic: bool,
    pub distributive: bool,
    pub orthocomplemented: bool,
    /// `None` when no orthocomplement is attached.
    pub orthomodular: Option<bool>,
    pub di_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub expected: Expected,
}

const fn expected(
    elements: usize,
    atoms: usize,
    atomistic: bool,
    distributive: bool,
    orthomodular: Option<bool>,
    di_size: usize,
) -> Expected {
    Expected {
        elements,
        atoms,
        atomistic,
        distributive,
        orthocomplemented: orthomodular.is_some(),
        orthomodular,
        di_size,
    }
}

/// The named entries, in display order.
pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "photon",
            description: "polarizer lattice MO(2)",
            expected: expected(6, 4, true, false, Some(true), 16),
        },
        CatalogEntry {
            name: "mo3",
            description: "MO(3), three complementary atom pairs",
            expected: expected(8, 6, true, false, Some(true), 64),
        },
        CatalogEntry {
            name: "boolean2",
            description: "Boolean algebra on two atoms",
            expected: expected(4, 2, true, true, Some(true), 4),
        },
        CatalogEntry {
            name: "boolean3",
            description: "Boolean algebra on three atoms",
            expected: expected(8, 3, true, true, Some(true), 8),
        },
        CatalogEntry {
            name: "o6",
            description: "orthocomplemented hexagon, not orthomodular",
            expected: expected(6, 2, false, false, Some(false), 9),
        },
        CatalogEntry {
            name: "m3",
            description: "diamond, not distributive",
            expected: expected(5, 3, true, false, None, 8),
        },
        CatalogEntry {
            name: "n5",
            description: "pentagon, not distributive",
            expected: expected(5, 2, false, false, None, 6),
        },
        CatalogEntry {
            name: "chain3",
            description: "three-element chain",
            expected: expected(3, 1, false, true, None, 3),
        },
        CatalogEntry {
            name: "note13",
            description: "four-state closure space with a continuous induction whose relational inverse is not",
            expected: expected(7, 4, true, false, None, 16),
        },
    ]
}

/// Builds an entry by name. Besides the fixed entries, `moN`, `booleanN`
/// and `chainN` build the parameterised families.
pub fn build(name: &str) -> Result<CatalogObject, CatalogError> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    Ok(match name {
        "photon" => CatalogObject::Ortho(make_photon()),
        "o6" => CatalogObject::Ortho(make_o6()),
        "m3" => CatalogObject::Lattice(make_m3()),
        "n5" => CatalogObject::Lattice(make_n5()),
        "note13" => CatalogObject::Note13(Box::new(make_note13())),
        _ => {
            if let Some(n) = num("mo") {
                CatalogObject::Ortho(make_mo(n)?)
            } else if let Some(n) = num("boolean") {
                CatalogObject::Ortho(make_boolean(n)?)
            } else if let Some(n) = num("chain") {
                CatalogObject::Lattice(make_chain(n)?)
            } else {
                return Err(CatalogError::UnknownEntry(name.to_owned()));
            }
        }
    })
}

/// Computes the facts of `obj` afresh.
pub fn compute_facts(obj: &CatalogObject, caps: &Caps) -> Result<Expected, CatalogError> {
    let l = obj.lattice();
    Ok(Expected {
        elements: l.len(),
        atoms: l.atoms().len(),
        atomistic: l.is_atomistic(),
        distributive: l.is_distributive(),
        orthocomplemented: obj.ortho().is_some(),
        orthomodular: obj.ortho().map(OrthoLattice::is_orthomodular),
        di_size: enumerate_di(l, caps)?.len(),
    })
}

/// Builds `entry` and compares its computed facts with the expected ones.
pub fn self_test(entry: &CatalogEntry, caps: &Caps) -> Result<Option<String>, CatalogError> {
    let got = compute_facts(&build(entry.name)?, caps)?;
    Ok((got != entry.expected).then(|| format!("expected {:?}, computed {got:?}", entry.expected)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_matches_its_metadata() {
        let caps = Caps::default();
        for entry in entries() {
            assert_eq!(self_test(&entry, &caps).unwrap(), None, "{}", entry.name);
        }
    }

    #[test]
    fn di_sizes_match_the_oracle() {
        for entry in entries() {
            let obj = build(entry.name).unwrap();
            assert_eq!(
                crate::oracle::di_ideals(obj.lattice()).len(),
                entry.expected.di_size,
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn photon_identities() {
        let o = make_photon();
        let l = o.lattice();
        let e = |n| l.elem(n).unwrap();
        assert_eq!(l.names(), ["0", "a", "b", "a'", "b'", "1"]);
        assert_eq!(l.meet(e("a"), l.join(e("b"), e("a'"))), e("a"));
        assert_eq!(l.join(l.meet(e("a"), e("b")), l.meet(e("a"), e("a'"))), e("0"));
        assert_eq!(make_mo(2).unwrap(), o);
    }

    #[test]
    fn note13_facts() {
        let n = make_note13();
        assert_eq!(n.space.closed_sets().len(), 7);
        assert_eq!(n.lattice.names(), ["0", "p", "q", "r", "s", "qrs", "1"]);
        let rs = n.lattice.resolve_set(&["r", "s"]).unwrap();
        assert_eq!(n.lattice.name(n.lattice.join_set(rs)), "qrs");
    }

    #[test]
    fn families() {
        assert_eq!(make_boolean(3).unwrap().lattice().names()[3], "ab");
        assert!(make_boolean(7).is_err());
        assert!(make_mo(32).is_err());
        assert_eq!(make_chain(5).unwrap().names(), ["0", "m1", "m2", "m3", "1"]);
        assert!(matches!(build("nope"), Err(CatalogError::UnknownEntry(_))));
        assert_eq!(build("boolean1").unwrap().lattice().len(), 2);
    }
}
