//! Fixtures shared by the criterion benches.

use mipkit::{corpus, PcPresentation};

/// Groups timed by the table and canonical-form benches, with the level
/// used for each.
pub fn fixtures() -> Vec<(PcPresentation, usize)> {
    vec![
        (corpus::d8(), 5),
        (corpus::q8(), 5),
        (corpus::dihedral(4), 6),
        (corpus::heisenberg(3), 6),
        (corpus::extraspecial_exp_p2(3), 6),
    ]
}
