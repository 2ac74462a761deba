//! Spectral gaps of one-dimensional weighted diffusion operators.
//!
//! The operator under study is
//!
//! ```text
//! L f = σ²(x) f″(x) + ((σ²)′(x) − σ²(x) V′(x)) f′(x),
//! ```
//!
//! reversible with respect to μ(dx) ∝ e^{−V(x)} dx. Its spectral gap
//! λ₁(−L) is the optimal constant in the weighted Poincaré inequality
//! λ Var_μ(f) ≤ ∫ σ² f′² dμ. This crate estimates λ₁ by four independent
//! routes and cross-validates them:
//!
//! * [`closed_form`] — theorem-level values and bounds for the built-in
//!   measure/weight families (exponential power, weighted Gaussian,
//!   generalized Cauchy, Bobkov–Ledoux rescaling);
//! * [`rayleigh`] — variational upper bounds from explicit test functions;
//! * [`intertwining`] — lower bounds λ₁ ≥ sup_f inf_x (−Lf)′/f′ over
//!   increasing f, with the ε-families that make them tight;
//! * [`spectral`] — a brute-force oracle: finite-volume discretization on a
//!   metric-adapted grid and a Sturm-bisection tridiagonal eigensolver.
//!
//! [`verify`] bundles the cross-validation suites that the CLI exposes as
//! `poincare-gap verify <suite>`.

pub mod closed_form;
mod error;
pub mod intertwining;
pub mod models;
pub mod quadrature;
pub mod rayleigh;
mod search;
pub mod special_functions;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use models::{DiffusionModel, EstimateKind, FamilyTag, GapEstimate, TailDecay};
pub use quadrature::QuadratureSpec;
pub use rayleigh::TestFunction;
pub use spectral::Quality;
