//! Exact algebra of invariant metric currents on Carnot groups.
//!
//! The boundary of an invariant current is the Chevalley–Eilenberg
//! differential applied to a horizontal multivector, so currents form its
//! kernel. Simple cycles in that kernel come from horizontal abelian
//! subalgebras. Everything is computed over exact rationals.

pub mod algebra;
pub mod catalog;
pub mod currents;
pub mod document;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod rational;
pub mod rectifiability;
pub mod rumin;
pub mod syntax;

pub use algebra::{StratifiedLieAlgebra, ValidationReport, Vector, Violation};
pub use currents::{BoundaryVector, InvariantPrecurrent};
pub use document::{load_algebra, AlgebraSpecDocument};
pub use error::{AlgebraError, CurrentsError, ExteriorError, ParseError, RectError};
pub use exterior::{MultiCovector, MultiVector};
pub use rational::Rational;
pub use rectifiability::{Certificate, Status, Verdict, Witness};
pub use rumin::Subspace;
