//! Exact Euler calculus of constructible functions on finite stratified
//! geometries.
//!
//! A [`StratifiedGeometry`] is given as combinatorial data: strata with
//! dimensions and compactly supported Euler characteristics, the closure
//! order, complex-link Euler characteristics and normal-slice polar
//! multiplicities. From this the crate computes Euler obstructions,
//! generic nearby and vanishing cycles, higher discriminants, Euler
//! obstruction decompositions, characteristic cycles and polar stalk bounds,
//! all in checked integer arithmetic.
//!
//! ```
//! use std::sync::Arc;
//! use stratcalc_core::{corpus, decompose, ConstructibleFunction};
//!
//! let m = corpus::cuspfam();
//! let push = m.pushforward(&ConstructibleFunction::one(m.source().clone())).unwrap();
//! let d = decompose(&push).unwrap();
//! assert_eq!(d.coefficients.len(), 1);
//! assert_eq!(d.coefficients[0].stratum.as_str(), "D");
//! ```

mod arith;
pub mod bundle;
pub mod corpus;
pub mod discriminant;
pub mod error;
pub mod function;
pub mod geometry;
pub mod operators;
pub mod oracle;
pub mod pushforward;

pub use bundle::{canonicalize, parse_bundle, serialize_bundle, Bundle, NamedFunction, NamedModel};
pub use discriminant::{
    characteristic_cycle, csm_formal, decompose, discriminants, embed, embed_n, massey_chi_check,
    stalk_bounds, ConormalCycle, Decomposition, DecompositionTerm, DiscriminantReport, FormalClass,
    StalkBounds,
};
pub use error::{Error, Result};
pub use function::{linear_combine, pointwise_multiply, ConstructibleFunction, EuCoefficients};
pub use geometry::{
    euler_obstruction_matrix, s_sequence, Diagnostic, EuMatrix, GeometryBuilder, SSequence,
    Stratum, StratifiedGeometry, StratumId,
};
pub use operators::{ambient_phi_psi, phi_generic, phi_psi, phi_xi, psi_generic, Operators};
pub use oracle::{
    compare_chi, compare_fibers, oracle_chi, oracle_pushforward_at_vertex, Comparison,
    SimplicialMap, SimplicialModel,
};
pub use pushforward::{compose, pushforward, MapDiscriminants, StratifiedMap};
