//! Recursive Schreier families A_xi below epsilon-0, their block counterparts
//! B^xi, hereditary-family algebra with a finite-surrogate Cantor-Bendixson
//! index, xi-sum-sets through the binary-encoding bijection, and desk-scale
//! monochromatic witness search.

pub mod blocks;
pub mod cbindex;
pub mod cli;
pub mod config;
pub mod error;
pub mod oracle;
pub mod ordinal;
pub mod partition;
pub mod schreier;
pub mod selftest;
pub mod sumsets;

pub use blocks::{
    closure, decompose_b, enumerate_b, fu_enumerate, make_collection, make_family, member_b,
    refines, subcollections, ClosureKind, DisjointCollection, ExplicitFamily, PartKind,
};
pub use cbindex::{
    build_schreier_family, cb_index_m, derivative_m, CbIndex, DerivativeConfig, WitnessUniverse,
};
pub use error::{Error, Result};
pub use ordinal::{format_ordinal, parse_ordinal, Ordinal, OrdinalClass, LADDER_RULE};
pub use partition::{
    hindman_search, verify_fu_mono, verify_xi_mono, xi_mono_search, BlockColoring,
    CollectionColoring, ColoringSpec, MonoResult, SearchOutcome, SearchReport,
};
pub use sumsets::{c_min, phi, phi_inv, sumset_p, transport_check, SumsetMode, TransportReport};

pub use schreier::{
    decompose_a, decompose_stream_a, enumerate_a, member_a, peel_a, Decomposition, FiniteSet,
    PeelResult,
};
