//! Exact-arithmetic computation of equivariant fundamental classes of
//! orbit closures of Dynkin-quiver representations.
//!
//! The pipeline: enumerate the positive roots of the quiver's root system
//! ([`rootsys`]), label orbits by root multiplicities ([`orbits`]), pick a
//! directed partition of the support and derive a resolution pair
//! ([`resolution`]), expand the induced rational generating function inside
//! an exponent window ([`laurent`]), and push the expansion through the
//! symbol or determinant operation into the Chern or Schur-product basis
//! ([`delta_ops`], [`evaluator`]).

pub mod delta_ops;
pub mod error;
pub mod evaluator;
pub mod laurent;
pub mod orbits;
pub mod resolution;
pub mod rootsys;
pub mod suite;

pub use delta_ops::{
    c_op, delta_op, delta_op_schur, delta_to_chern, straighten, ChernBasisPoly,
    ChernMono, Partition, SchurBasisPoly, Straightened, VarGroup,
};
pub use error::{Error, Result};
pub use evaluator::{
    compute, compute_c_form, compute_delta_form, compute_vertex_form, gtp_oracle,
    gtp_orbit, orbit_codim, positivity_report, ComputeOptions, PositivityReport,
    Provenance, QuiverPolynomial, DEFAULT_TERM_CAP,
};
pub use laurent::{
    expand, expand_capped, prune_inert, BinomialFactor, ExponentWindow,
    GeneratingFunction, LaurentPoly, Monomial, VarId,
};
pub use orbits::{
    enumerate_orbits, enumerate_orbits_capped, validate_orbit, OrbitLabel,
    OrbitViolation, DEFAULT_ORBIT_CAP,
};
pub use resolution::{
    build_generating_function, closed_interference_factors, find_directed_partition,
    interference_factors, resolution_pair, total_codim, verify_directed,
    DirectedPartition, DirectedViolation, FactorData, GfForm, PartitionStrategy,
    ResolutionPair,
};
pub use rootsys::{
    euler_form, euler_form_roots, positive_roots, DimensionVector,
    DynkinType, PositiveRoot, Quiver,
};
