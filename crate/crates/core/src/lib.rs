//! Exact computations on the Hitchin base of twisted Higgs fields.
//!
//! * [`scalar`], [`poly`], [`matrix`]: exact scalars over ℚ and `F_p`, sparse
//!   graded polynomials and the spectral-variable layer.
//! * [`higgs`]: commuting-tuple Higgs fields and the Hitchin morphism.
//! * [`hitchin`], [`split`], [`roots`]: the Hitchin base, its projective
//!   completion, multiplication maps, splitting into linear factors and
//!   rational roots of univariate specializations.
//! * [`group`], [`equivariance`]: finite linear group actions, orbit
//!   factorization, descent and the image of the Hitchin morphism.
//! * [`lattice`], [`torus`]: integer normal forms and the connecting-group
//!   calculus for finite affine actions on tori.
//! * [`harness`]: seeded generators and property suites.
//! * [`json`]: the JSON encodings shared with the command-line tool.

pub mod arith;
pub mod equivariance;
pub mod error;
pub mod group;
pub mod harness;
pub mod higgs;
pub mod hitchin;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod split;
pub mod torus;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
