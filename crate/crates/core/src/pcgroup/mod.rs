//! Finite p-groups given by consistent power-commutator presentations.

mod abelian;
mod classes;
mod iso;
mod presentation;
mod series;
mod subgroup;

pub use abelian::{abelian_decomposition, abelian_invariants, is_abelian, AbelianDecomposition};
pub use classes::{
    center, centralizer, class_data, conjugacy_classes, element_at, element_index, ClassData,
    ConjugacyClass,
};
pub use iso::{find_isomorphism, is_isomorphic_groups};
pub use presentation::{Element, PcPresentation, PresentationBuilder, Word};
pub use series::{
    agemo_series, derived_subgroup, exponent, frattini_subgroup, group_props,
    lower_central_series, nilpotency_class, standard_subgroups, GroupProps, SubgroupRecord,
};
pub use subgroup::{
    agemo, commutator_subgroup, intersection, join, normal_closure, quotient, quotient_group,
    subgroup_generated, subgroup_presentation, Quotient, Subgroup,
};

/// Parses and validates a `.pcp` presentation.
pub fn parse_presentation(text: &str) -> crate::Result<PcPresentation> {
    PcPresentation::parse(text)
}
