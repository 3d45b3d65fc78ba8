//! Characteristic-class rings, Poincaré duality and volumes of the oriented
//! real Grassmann manifolds, with exact arithmetic throughout.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] — scalars of the form `q * sqrt(r) * pi^k`;
//! * [`symfun`] — splitting-principle root polynomials;
//! * [`charring`] — per-manifold cohomology models (reduction, integration, Hodge star);
//! * [`volumes`] — volumes of spheres, Lie groups and homogeneous spaces;
//! * [`duality`] — Gram matrices, dual bases, Poincaré duals, Smith normal form;
//! * [`catalog`] — the bundled manifold data, Gysin solver and Gauss-map formulas;
//! * [`verify`] — the self-check report surfaced by the CLI.

pub mod catalog;
pub mod charring;
pub mod duality;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod symfun;
pub mod verify;
pub mod volumes;

pub use charring::expr::{Bundle, ClassExpr, Generator, Monomial};
pub use charring::ManifoldModel;
pub use error::{Error, ErrorKind, Result};
pub use exact::ExactScalar;
