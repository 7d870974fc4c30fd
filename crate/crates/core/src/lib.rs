//! Component-based Chinese vector glyph composition.
//!
//! The pipeline: a decomposition table maps characters to component trees
//! ([`decomp`]); component outlines are Bézier contours in font units
//! ([`glyph`]); they are rendered to grayscale rasters ([`raster`]) that feed
//! an affine-regression network ([`model`]) built from hand-differentiated
//! kernels ([`diffops`]); a deterministic trainer ([`train`]) fits the
//! regressor and [`metrics`] scores composed characters. Regressed
//! sampling-grid affines convert back to font-unit transforms that apply
//! directly to the Bézier control points, so composed characters stay
//! editable vectors.

pub mod decomp;
pub mod diffops;
pub mod glyph;
pub mod metrics;
pub mod model;
pub mod raster;
pub mod rng;
pub mod train;

pub use decomp::{ComponentRef, CompositionPlan, DecompEntry, Layout, LayoutKind};
pub use glyph::{ContentAffine, GridAffine, RenderFrame, VectorGlyph};
pub use model::CarModel;
pub use raster::Raster;
