//! Conformal Killing vectors and tensors of flat 3-space.

pub mod basis;
pub mod coefficients;
pub mod conformal;
pub mod field;
pub mod nijenhuis;
pub mod symmetry;

pub use basis::{ckv_basis, Ckv};
pub use coefficients::{assemble_ckt, trace_free_reduce, CktCoefficients};
pub use conformal::{ckt_dimension, killing_obstruction, lie_derivative, verify_ckt, CktVerdict};
pub use field::{is_closed, OneForm, SymTensorField, TwoForm, VectorField};
pub use nijenhuis::{nijenhuis, tsn_check, tsn_conditions, NijenhuisTensor};
pub use symmetry::{scan_symmetry, symmetry_subspace, tsn_filter, SymmetryEigenspace, SymmetryMode, SymmetryScan};
