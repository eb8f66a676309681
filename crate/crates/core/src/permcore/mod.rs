//! Permutations, permutation groups with stabilizer chains, element
//! enumeration, and conjugacy classes.

mod elements;
mod group;
mod perm;

pub use elements::{conjugacy_class_reps, ClassReps, Conjugacy, ElementList};
pub use group::PermGroup;
pub use perm::{Permutation, Point};

use crate::error::{Error, Result};

/// Builds the group generated by `generators` (non-empty, uniform degree).
pub fn build_group(generators: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::new(generators)
}

/// Conjugate subgroup `G^g`, generated by `x^g` for each generator `x`.
pub fn conjugate_subgroup(group: &PermGroup, g: &Permutation) -> Result<PermGroup> {
    if g.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            expected: group.degree(),
            found: g.degree(),
        });
    }
    PermGroup::with_degree(
        group.degree(),
        group
            .generators()
            .iter()
            .map(|x| x.conjugate_by(g))
            .collect(),
    )
}
