//! Curvature invariants of plane curves at 3/2-cusps and generic
//! inflections.
//!
//! Curves enter as [`CurveSpec`]s written in a small expression language
//! (or looked up in the [`dsl::CATALOG`]) and are expanded as Taylor jets.
//! From the jets the crate computes cuspidal and inflectional curvatures,
//! normalized curvature profiles that stay smooth through the singular
//! point, normal-form coefficients, and it reconstructs curves from a
//! prescribed normalized curvature.
//!
//! ```
//! use cuspidal::{affine, dsl, euclid, Curve};
//!
//! let cycloid = dsl::parse_curve("(t - sin(t), -1 + cos(t))").unwrap();
//! let germ = cycloid.jet(0.0, 8).unwrap();
//! assert!((euclid::mu_g(&germ).unwrap() - 1.0).abs() < 1e-12);
//! assert!((affine::mu_a(&germ).unwrap() - 36.0).abs() < 1e-10);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod affine;
pub mod curve;
pub mod dsl;
pub mod error;
pub mod euclid;
pub mod jet;
pub mod normal_form;
pub mod plane;
pub mod quadrature;
pub mod singular;
pub mod synthesis;
pub mod verify;

pub use curve::{Curve, ScalarFn};
pub use dsl::CurveSpec;
pub use error::{Error, Result};
pub use jet::Jet;
pub use plane::{Mat2, PlaneJet, Vec2};
pub use singular::{NormalizedProfile, ProfileKind};
