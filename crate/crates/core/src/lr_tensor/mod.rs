//! Tensor products of irreducible integrable modules: combinatorial
//! Littlewood-Richardson predictions and their explicit realization.

pub mod combinatorics;
pub mod pair;

pub use combinatorics::{
    gl_dim, horizontal_strips, lr_coefficient, pieri_product, removable_horizontal_strips, stable_tensor,
    tensor_at_rank, KostkaTable, LrCache, TensorResult,
};
pub use pair::{cyclic_vector, decompose_tensor_pair, decompose_tensor_pair_report, move_off_support, pair_window, PairReport};
