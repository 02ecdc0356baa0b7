//! Egocentric multi-view collision prediction, end to end.
//!
//! The crate covers the full pipeline at desk scale:
//!
//! - procedural scenes, a 10-sphere articulated walker, collision checking
//!   and per-joint contact assignment ([`scene`], [`body`], [`motion`],
//!   [`collide`]);
//! - body-mounted cameras, a raycast RGB-D renderer, and Gaussian collision
//!   heatmap annotation ([`camera`], [`render`], [`heatmap`]);
//! - supervised window slicing, a checksummed binary shard format, and
//!   scene-level splits ([`dataset`]);
//! - a space-time-viewpoint attention network with heatmap and
//!   classification heads, written directly on `ndarray` with hand-derived
//!   gradients ([`nn`], [`model`]);
//! - multi-task training (KL heatmap loss + BCE classification losses),
//!   evaluation metrics, and a closed-loop avoidance controller ([`train`],
//!   [`control`]);
//! - a command-line front end and PNG visualization helpers ([`cli`],
//!   [`viz`]).
//!
//! See the crate examples for one runnable entry point per capability.

pub mod body;
pub mod camera;
pub mod collide;
pub mod dataset;
pub mod error;
pub mod geom;
pub mod heatmap;
pub mod motion;
pub mod render;
pub mod scene;

pub use error::{Error, Result};
