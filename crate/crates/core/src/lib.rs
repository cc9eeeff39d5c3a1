//! Numerical laboratory for the parabolic-elliptic chemotaxis system
//!
//! ```text
//!   u_t = Δu - χ₀ ∇·( u^m / (1+v)^β ∇v ) + a u - b u^{1+α}
//!    0  = Δv - μ v + ν u^γ
//! ```
//!
//! on boxes with homogeneous Neumann boundaries. The crate provides
//!
//! * the closed-form constants and thresholds attached to the system
//!   (Ψ_β, Θ_β, M*, K, the critical χ₀ values) in [`constants`],
//! * cell-centered grids and the discrete field calculus in [`grid`],
//! * an exact cosine-basis resolvent solver for the signal equation in
//!   [`elliptic`],
//! * a positivity-preserving, mass-conservative IMEX stepper with blow-up
//!   and steady-state detection in [`dynamics`],
//! * a classifier mapping parameter tuples to the strongest available
//!   boundedness/global-existence guarantee in [`regime`],
//! * per-step inequality monitors (entropy bound, resolvent contraction,
//!   gradient estimate, mass and sup-norm bounds) in [`diagnostics`].

pub mod constants;
pub mod decimal;
pub mod diagnostics;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod extreal;
pub mod grid;
pub mod regime;
pub mod snapshot;

pub use constants::{EllipticConstant, EllipticConstantModel, ModelParams};
pub use error::{Error, Result};
pub use extreal::ExtReal;
pub use grid::{BoxDomain, FaceField, Field, Grid};
