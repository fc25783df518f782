//! Finite order-theoretic models of quantum and dynamic logics.
//!
//! Lattices are small and explicit. Everything is decided by exhaustive
//! search over element tables, with caps on the expensive constructions
//! (see [`Caps`]).

pub mod catalog;
pub mod dsl;
pub mod dynamics;
pub mod ideals;
pub mod order;
pub mod ortho;
pub mod quantale;
pub mod report;
pub mod set;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use dynamics::{make_induction, DynError, Induction, InductionAlgebra};
pub use ideals::{di_closure, enumerate_di, DiLattice, IdealError, PropertySet};
pub use order::{build_lattice, Bound, FiniteLattice, LatticeError, MapError, MonotoneMap};
pub use ortho::{attach_ortho, Cartan, ClosureSpace, OrthoError, OrthoLattice, StateClosure, StateSpace};
pub use quantale::{quantale_of_induction, Direction, FiniteQuantale, ProductTable, QuantaleError};
pub use report::{LawReport, LawSet};
pub use set::{Elem, ElemSet, StateSet, MAX_ELEMENTS};

/// Limits on the exhaustive constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Lattices up to this size have `DI(L)` enumerated through all down-sets.
    pub di_lattice_size: usize,
    /// Larger atomistic lattices are handled if they have at most this many atoms.
    pub di_atoms: usize,
    /// Pairwise and triple law checks on `DI(L)` refuse above this many ideals.
    pub law_check_ideals: usize,
    /// Quantale law checks refuse above this many elements.
    pub algebra_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            di_lattice_size: 20,
            di_atoms: 16,
            law_check_ideals: 256,
            algebra_size: 64,
        }
    }
}

impl Caps {
    pub const ENV_VAR: &'static str = "OQLKIT_CAP";

    /// Defaults with the lattice-size cap overridden.
    pub fn with_size(n: usize) -> Self {
        Caps {
            di_lattice_size: n,
            ..Caps::default()
        }
    }

    /// Defaults, with the lattice-size cap taken from `OQLKIT_CAP` if it is
    /// set to a number.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Caps::default, Caps::with_size)
    }
}
