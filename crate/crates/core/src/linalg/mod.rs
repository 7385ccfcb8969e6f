//! Exact dense linear algebra over GF(p).

mod factor;
mod matrix;
mod pfaffian;
mod subspace;
mod update;

pub use factor::{rank2_update_factorization, rank_factorization, RankFactorization};
pub use matrix::{kron_vec, FMatrix};
pub use pfaffian::pfaffian;
pub use subspace::{apply_space, Subspace};
pub use update::{
    embed_principal, low_rank_update_inverse, low_rank_update_inverse_at, schur_inverse, update_core,
    update_is_nonsingular,
};

pub(crate) use matrix::axpy;
