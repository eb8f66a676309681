use num_bigint::BigUint;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::permcore::{PermGroup, Permutation};

/// The derived series `G ≥ G' ≥ G'' ≥ …` down to its terminal term.
#[derive(Debug, Clone)]
pub struct DerivedSeries {
    pub terms: Vec<PermGroup>,
}

impl DerivedSeries {
    pub fn orders(&self) -> Vec<BigUint> {
        self.terms.iter().map(|t| t.order().clone()).collect()
    }

    pub fn terminal(&self) -> &PermGroup {
        self.terms.last().expect("series is never empty")
    }

    /// Number of steps to reach the trivial group, if it is reached.
    pub fn derived_length(&self) -> Option<usize> {
        self.terminal().is_trivial().then(|| self.terms.len() - 1)
    }
}

/// Normal closure of `seeds` under conjugation by `ambient_gens`, without
/// membership checks.
pub(crate) fn closure_under(
    degree: usize,
    ambient_gens: &[Permutation],
    seeds: Vec<Permutation>,
) -> PermGroup {
    let mut n = PermGroup::trivial(degree);
    let mut queue: Vec<Permutation> = seeds.into_iter().filter(|s| !s.is_identity()).collect();
    while let Some(x) = queue.pop() {
        if n.contains_unchecked(&x) {
            continue;
        }
        for g in ambient_gens {
            queue.push(x.conjugate_by(g));
        }
        n.extend_unchecked(x);
    }
    n
}

/// Smallest subgroup containing `seeds` and normalized by `ambient`.
pub fn normal_closure(ambient: &PermGroup, seeds: &[Permutation]) -> Result<PermGroup> {
    for s in seeds {
        if !ambient.contains(s)? {
            return Err(Error::NotASubgroup(format!(
                "{s} is not in the ambient group"
            )));
        }
    }
    let gens: Vec<Permutation> = ambient.nontrivial_generators().cloned().collect();
    Ok(closure_under(ambient.degree(), &gens, seeds.to_vec()))
}

/// `[H, H]`, as the normal closure of the generator commutators.
pub fn derived_subgroup(group: &PermGroup) -> PermGroup {
    let gens: Vec<Permutation> = group.nontrivial_generators().cloned().collect();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = Permutation::commutator(a, b);
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    closure_under(group.degree(), &gens, seeds)
}

pub fn derived_series(group: &PermGroup) -> DerivedSeries {
    let mut terms = vec![group.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = derived_subgroup(last);
        let stable = next.order() == last.order();
        terms.push(next);
        if stable {
            break;
        }
    }
    DerivedSeries { terms }
}

/// True iff the derived series reaches the trivial group.
pub fn is_soluble(group: &PermGroup) -> bool {
    let mut h = group.clone();
    loop {
        if h.is_trivial() || h.is_abelian() {
            return true;
        }
        let d = derived_subgroup(&h);
        if d.order() == h.order() {
            return false;
        }
        h = d;
    }
}

/// Solubility of `⟨a, b⟩`.
pub fn is_soluble_pair(a: &Permutation, b: &Permutation) -> bool {
    if a.compose(b) == b.compose(a) {
        return true;
    }
    let g = PermGroup::with_degree(a.degree(), vec![a.clone(), b.clone()]).expect("equal degrees");
    is_soluble(&g)
}

/// `[A, B]`: the normal closure in `⟨A ∪ B⟩` of the commutators of generators.
pub fn commutator_of_subgroups(
    a: &PermGroup,
    b: &PermGroup,
    ambient: &PermGroup,
) -> Result<PermGroup> {
    if !a.is_subgroup_of(ambient) {
        return Err(Error::NotASubgroup(
            "A is not contained in the ambient group".into(),
        ));
    }
    if !b.is_subgroup_of(ambient) {
        return Err(Error::NotASubgroup(
            "B is not contained in the ambient group".into(),
        ));
    }
    let joined = a.join(b)?;
    let gens: Vec<Permutation> = joined.nontrivial_generators().cloned().collect();
    let mut seeds = Vec::new();
    for x in a.nontrivial_generators() {
        for y in b.nontrivial_generators() {
            seeds.push(Permutation::commutator(x, y));
        }
    }
    Ok(closure_under(ambient.degree(), &gens, seeds))
}

/// `A ∩ B`, by listing the smaller group and testing membership in the other.
pub fn intersection(a: &PermGroup, b: &PermGroup, budget: &Budget) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let (small, large) = if a.order() <= b.order() {
        (a, b)
    } else {
        (b, a)
    };
    if small.is_subgroup_of(large) {
        return Ok(small.clone());
    }
    let els = small.elements(budget)?;
    let mut out = PermGroup::trivial(a.degree());
    for i in 1..els.len() {
        let x = els.perm(i);
        if large.contains_unchecked(&x) && !out.contains_unchecked(&x) {
            out.extend_unchecked(x);
        }
    }
    Ok(out)
}
