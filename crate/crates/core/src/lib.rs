pub mod dual;
pub mod error;
pub mod field;
pub mod instance;
pub mod linalg;
pub mod oracle;
pub mod repr;
pub mod solve;

pub use dual::NestedTwoCover;
pub use error::{Error, Result};
pub use field::{Fp, Prime};
pub use instance::{Graph, HalfVector, LineSet};
pub use linalg::{FMatrix, RankFactorization, Subspace};
pub use repr::Evaluation;
pub use solve::{Algorithm, SolveReport};
