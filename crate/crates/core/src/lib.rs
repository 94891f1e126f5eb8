//! Exact integer arithmetic for sheaf-theoretic computations on polarized
//! abelian surfaces presented as abstract Néron-Severi lattices.
//!
//! The crate answers, by pure lattice arithmetic, whether the moduli space of
//! semistable sheaves with a given Mukai vector satisfies weak Brill-Noether
//! (the general sheaf has at most one nonzero cohomology group), computes the
//! cohomology profile of the general sheaf, and generates the certificates
//! that witness failure: isotropic decompositions, their translation tuples
//! on the Néron-Severi side, Pell-driven counterexample streams, wall orbits,
//! and Ulrich bundle classifications.
//!
//! Everything is arbitrary precision (`num-bigint`); there is no floating
//! point anywhere in the decision paths.

pub mod arith;
pub mod construct;
pub mod decomp;
pub mod error;
pub mod fixture;
pub mod lattice;
pub mod mukai;
pub mod oracle;
pub mod rank2;

/// Scalar used throughout: arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;

pub use construct::{
    elliptic_product_stream, find_nonsquare_sublattice, is_totally_semistable_candidate, is_wall,
    polarization_against, rank2_counterexample_stream, ulrich_classify, ulrich_enumerate_rank1,
    wall_orbit, CounterexampleRecord, EllipticProductStream, Provenance, Rank2CounterexampleStream,
    UlrichConclusion, UlrichConditions, UlrichReport, WallOrbit,
};
pub use decomp::{
    brute_force_oracle, decomposition_from_tuple, search_decompositions, search_tuples,
    tuple_from_decomposition, verify_decomposition, IsotropicDecomposition, SearchBound,
    TranslationTuple, DEFAULT_COORD_BOX,
};
pub use lattice::{ConeModel, DivisorClass, IntersectionLattice, SurfaceContext};
pub use mukai::{mukai_pairing, mukai_square, special_form, twist, MukaiVector, SpecialForm};
pub use oracle::{
    decide, generic_profile, semi_homogeneous_cohomology, Certificate, CohomologyProfile,
    HoldsReason, WbnStatus, WbnVerdict,
};
pub use rank2::{
    embed_into_u, isometry_from_pell, stabilize_mod, BinaryEvenForm, FormClass, Isometry2x2,
    UEmbedding,
};
