//! Exact-arithmetic toolkit for polynomial endomorphisms `K^n -> K^m`.
//!
//! Everything is generic over a [`Field`]; [`Rationals`] and [`PrimeField`]
//! are the two provided scalar fields, with aliases below for the common
//! concrete types.

pub mod collinear;
pub mod error;
pub mod field;
pub mod inversion;
pub mod matrix;
pub mod mpoly;
pub mod polymap;
pub mod reduction;

pub use collinear::{
    collision_search, find_rank_drop, genlm_check, line_injectivity, line_restriction, verify_gencr, CollisionWitness,
    LineData, LineInjectivity, RankDrop,
};
pub use error::{Error, Result};
pub use field::{Field, FieldDesc, PrimeField, Rationals};
pub use inversion::{
    extend_inverse, formal_inverse, gabber_bound, inverse_degree, invert, normalize_affine, triangular_inverse,
    verify_inverse, AffineNormalization, InverseResult, Verdict,
};
pub use matrix::{generalized_vandermonde, Matrix};
pub use mpoly::{parse, MPoly, Monomial, UniPoly};
pub use polymap::{euler_check, hadamard_power, power_linear, HomogeneousDecomposition, PolyMap, PolyMatrix};
pub use reduction::{
    constant_kernel, degree_bound_report, kernel_conjugate, pair_reduction, DegreeBoundReport, KernelReduction,
};

pub type QPoly = MPoly<Rationals>;
pub type FpPoly = MPoly<PrimeField>;
pub type QMatrix = Matrix<Rationals>;
pub type FpMatrix = Matrix<PrimeField>;
