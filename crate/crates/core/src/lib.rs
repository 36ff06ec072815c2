//! Conformal Killing tensors on flat 3-space and the separable webs of the
//! rotationally symmetric ones.
//!
//! Everything that decides a classification is computed in exact rational
//! arithmetic; floating point appears only in oracles and in the numeric
//! witnesses attached to canonical forms.

#![allow(clippy::needless_range_loop)]

pub mod ckt;
pub mod error;
pub mod exactmath;
pub mod expr;
pub mod group;
pub mod quartic;
pub mod rotational;
pub mod separability;

pub use error::{Error, Result};
pub use group::GroupElement;
pub use quartic::{BinaryQuartic, WebType};
pub use rotational::RotParams;
