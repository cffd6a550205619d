//! Structure-constant tables of quotients `I(kG)/I(kG)^s` of the
//! augmentation ideal, built directly at a given truncation level.

mod build;
mod counting;
mod table;

pub use build::{
    build_aug_table, build_aug_table_with, element_vector, element_weight, element_weight_with,
    extend_table,
};
pub use counting::{phi_count, psi_count};
pub use table::{AlgElement, SCTable, Sparse};


/// `x * y` in the table algebra.
pub fn alg_multiply(t: &SCTable, x: &AlgElement, y: &AlgElement) -> crate::Result<AlgElement> {
    t.multiply(x, y)
}

/// `x^e` in the table algebra, `e >= 1`.
pub fn alg_power(t: &SCTable, x: &AlgElement, e: u64) -> crate::Result<AlgElement> {
    t.power(x, e)
}

/// `dim I^m` for `1 <= m < trunc`.
pub fn ideal_power_dims(t: &SCTable) -> Vec<usize> {
    t.ideal_power_dims()
}
