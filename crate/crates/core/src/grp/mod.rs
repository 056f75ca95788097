//! Concrete finite groups: elements, BFS enumeration, orbits, classes,
//! cores and 2-group analysis.

pub mod classes;
pub mod cores;
pub mod element;
pub mod group;
pub mod orbit;
pub mod pgroup;
pub mod small;

pub use classes::{
    centralizer, centralizer_of_subgroup, conjugacy_classes, normalizer, transporter, ClassData,
    ConjugacyClass, Transport,
};
pub use cores::{
    center, central_quotient, derived_subgroup, is_normal, normal_closure, normal_subgroups, o2,
    odd_core, predicates, z_star, GroupPredicates,
};
pub use element::{Ambient, Element, Matrix, Perm, Shape};
pub use group::{generate, Enumeration, Group, Subgroup, DEFAULT_CAP};
pub use pgroup::{
    automorphisms_of_2_group, elementary_abelian_subgroups, recognize_2_group, subgroups_of_2_group,
    two_rank, HomomorphismTable, TwoGroupType,
};
pub use small::SmallGroup;
