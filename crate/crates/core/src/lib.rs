//! Exact construction of sl2 fusion products M^A = Q[e_0..e_{n-1}]/I_A,
//! their distinguished submodules, the symmetric-polynomial dual, and the
//! vector-field and line-bundle computations on the associated varieties.

pub mod composition;
pub mod demazure;
pub mod dual;
pub mod error;
pub mod fusion;
pub mod geometry;
pub mod graded;
pub mod linalg;
pub mod poly;
pub mod store;
pub mod submodules;
pub mod tensor;

pub use composition::Composition;
pub use error::{FusionError, Result};
pub use fusion::FusionModule;
pub use graded::{cyclic_span, GradedCharacter, GradedModule, Op, Shift, Subspace};
pub use linalg::{Matrix, Scalar};
pub use poly::{enumerate_monomials, Bideg, Monomial, Polynomial};
