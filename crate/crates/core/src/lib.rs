//! Exact computations for symmetric cellular algebras.
//!
//! Given an algebra by structure constants, a cell datum and a symmetrizing
//! trace, this crate computes the dual cellular basis, the Gram matrices of
//! both bases, the constants `k_λ`, the nilpotent ideal `I` built from cells
//! with `k_λ = 0`, the Jacobson radical via annihilators of the cellular
//! simple modules, and a battery of semisimplicity criteria. Everything is
//! exact, over ℚ or GF(p).
//!
//! [`Analysis::run`] computes all of it at once for an [`Instance`].

pub mod algebra;
pub mod analysis;
pub mod cell;
pub mod dual;
pub mod error;
pub mod field;
pub mod generators;
pub mod linalg;
pub mod radical;
pub mod report;
pub mod workbench;

pub use algebra::{AlgebraDescriptor, DualBasis, Element, StructureConstant, TraceForm};
pub use analysis::{Analysis, Options, Summary};
pub use cell::{CellDatum, CellIndex, CellPoset, CellularAlgebra, GramData, Stratification};
pub use dual::{DualCellBasis, DualGramData};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use generators::{GeneratorSpec, Instance};
pub use linalg::{Matrix, SubspaceBasis};
pub use radical::{Battery, IdealData, RadicalReport};
pub use report::{Finding, Report};
pub use workbench::{Expected, WorkbenchFile};
