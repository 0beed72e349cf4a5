//! Construction and analysis of planar nematic director fields that relieve
//! a distortion prescribed along a line or a circle, by propagating the
//! boundary angle along straight characteristics.
//!
//! The crate splits into:
//! - [`geometry`], [`distortion`]: directors, gradients, and the splay /
//!   twist / bend / octupolar-splay decomposition;
//! - [`profiles`], [`halfplane`], [`circle`]: boundary angle profiles and the
//!   two characteristic constructions;
//! - [`fields`]: closed-form reference fields and the sampling trait;
//! - [`quasiuniform`], [`compatibility`]: numerical verification of
//!   quasi-uniformity and of the first-order compatibility system;
//! - [`render`]: CSV and SVG output.

pub mod error;
pub mod geometry;
pub mod distortion;
pub mod interpolate;
pub mod profiles;
pub mod parallel;
pub mod halfplane;
pub mod circle;
pub mod fields;
pub mod quasiuniform;
pub mod compatibility;
pub mod render;

pub use error::{Error, Result};
pub use geometry::{Director, DistortionFrame, GradientTensor, Slope, Tolerances};
pub use distortion::{
    decompose_gradient, ericksen_satisfied, oseen_frank_energy, planar_state_from_angle,
    polar_state_from_angle, q_identity_residual, DistortionState, ElasticConstants,
};
pub use fields::DirectorField;
pub use profiles::{winding_charge, CircleFrustration, LineFrustration};
