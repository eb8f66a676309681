//! Factorized groups `G = AB` and the three equivalent connection
//! conditions: every `⟨a, b⟩` soluble, the same for prime-power elements
//! of distinct primes, and `[A, B]` inside the soluble radical.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::liearith::arith::prime_power;
use crate::permcore::{conjugate_subgroup, PermGroup, Permutation};
use crate::structure::{
    commutator_of_subgroups, intersection, radical_gkps, soluble_radical, PairOracle, RadicalMethod,
};

/// `G = AB` with `A, B ≤ G`, together with `|A ∩ B|`.
#[derive(Debug, Clone)]
pub struct FactorizedGroup {
    pub g: PermGroup,
    pub a: PermGroup,
    pub b: PermGroup,
    pub intersection_order: u64,
}

impl FactorizedGroup {
    /// Caller guarantees both subgroup memberships and the product property.
    pub(crate) fn from_verified(
        g: PermGroup,
        a: PermGroup,
        b: PermGroup,
        intersection_order: u64,
    ) -> Self {
        FactorizedGroup {
            g,
            a,
            b,
            intersection_order,
        }
    }
}

/// Checks `A, B ≤ G` and `|A|·|B| = |G|·|A ∩ B|`.
pub fn make_factorized(
    g: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
    budget: &Budget,
) -> Result<FactorizedGroup> {
    for (name, h) in [("A", a), ("B", b)] {
        if h.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                expected: g.degree(),
                found: h.degree(),
            });
        }
        if !h.is_subgroup_of(g) {
            return Err(Error::NotASubgroup(format!("{name} is not contained in G")));
        }
    }
    let meet = intersection(a, b, budget)?;
    let k = meet.order().clone();
    let product = a.order() * b.order();
    if product != g.order() * &k {
        return Err(Error::ProductProperty {
            product: (product / &k).to_string(),
            group: g.order().to_string(),
        });
    }
    let k = k
        .try_into()
        .map_err(|_| Error::budget("intersection order", meet.order(), u64::MAX))?;
    Ok(FactorizedGroup::from_verified(
        g.clone(),
        a.clone(),
        b.clone(),
        k,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionMode {
    /// Every `a ∈ A`, `b ∈ B`.
    Full,
    /// `a` a `p`-element, `b` a `q`-element, `p ≠ q`.
    PrimePairs,
}

impl std::str::FromStr for ConditionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ConditionMode::Full),
            "prime-pairs" | "prime_pairs" => Ok(ConditionMode::PrimePairs),
            _ => Err(Error::InvalidParameters(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: Permutation,
    pub b: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub holds: bool,
    /// Least failing pair by image sequences, `a` first.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectionReport {
    pub condition1: bool,
    pub condition2: bool,
    pub condition3: bool,
    pub witness: Option<Witness>,
    #[serde(serialize_with = "crate::bigser::big")]
    pub radical_order: BigUint,
}

/// Shared state for many questions about subgroups of one group: the pair
/// oracle over its elements and its soluble radical.
pub struct ConnectionContext {
    oracle: PairOracle,
    radical: PermGroup,
    budget: Budget,
}

impl ConnectionContext {
    pub fn new(g: &PermGroup, budget: &Budget) -> Result<Self> {
        let oracle = PairOracle::new(g, budget)?;
        let radical = radical_gkps(&oracle, budget)?;
        Ok(ConnectionContext {
            oracle,
            radical,
            budget: budget.clone(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        self.oracle.group()
    }

    pub fn radical(&self) -> &PermGroup {
        &self.radical
    }

    pub fn oracle(&self) -> &PairOracle {
        &self.oracle
    }

    fn check_group(&self, f: &FactorizedGroup) -> Result<()> {
        if f.g.same_group(self.group()) {
            Ok(())
        } else {
            Err(Error::InvalidParameters(
                "factorization belongs to a different group".into(),
            ))
        }
    }

    /// Indices into the element list of `G`, ascending.
    fn indices(&self, h: &PermGroup) -> Result<Vec<usize>> {
        let els = h.elements(&self.budget)?;
        Ok(els
            .iter()
            .map(|x| {
                self.oracle
                    .elements()
                    .index_of(x)
                    .expect("subgroup element in G")
            })
            .collect())
    }

    /// Prime of each element of prime-power order, 0 for the identity and
    /// for mixed orders.
    fn element_primes(&self, idx: &[usize]) -> Vec<u64> {
        let els = self.oracle.elements();
        idx.iter()
            .map(|&i| {
                let o = els.perm(i).order();
                u64::try_from(o)
                    .ok()
                    .and_then(prime_power)
                    .map_or(0, |(p, _)| p)
            })
            .collect()
    }

    pub fn check_condition(
        &self,
        f: &FactorizedGroup,
        mode: ConditionMode,
    ) -> Result<ConditionOutcome> {
        self.check_group(f)?;
        let a = self.indices(&f.a)?;
        let b = self.indices(&f.b)?;
        let (a, b, pa, pb) = match mode {
            ConditionMode::Full => (a, b, None, None),
            ConditionMode::PrimePairs => {
                let pa = self.element_primes(&a);
                let pb = self.element_primes(&b);
                let keep = |idx: Vec<usize>, ps: Vec<u64>| -> (Vec<usize>, Vec<u64>) {
                    idx.into_iter().zip(ps).filter(|(_, p)| *p != 0).unzip()
                };
                let (a, pa) = keep(a, pa);
                let (b, pb) = keep(b, pb);
                (a, b, Some(pa), Some(pb))
            }
        };
        let pairs = a.len() as u64 * b.len() as u64;
        if pairs > self.budget.max_pair_checks {
            return Err(Error::budget(
                "pair checks",
                pairs,
                self.budget.max_pair_checks,
            ));
        }
        let failing = (0..a.len()).into_par_iter().find_map_first(|i| {
            (0..b.len())
                .find(|&j| {
                    let distinct = match (&pa, &pb) {
                        (Some(pa), Some(pb)) => pa[i] != pb[j],
                        _ => true,
                    };
                    distinct && !self.oracle.soluble(a[i], b[j])
                })
                .map(|j| (a[i], b[j]))
        });
        let els = self.oracle.elements();
        Ok(ConditionOutcome {
            holds: failing.is_none(),
            witness: failing.map(|(x, y)| Witness {
                a: els.perm(x),
                b: els.perm(y),
            }),
        })
    }

    /// `[A, B] ≤ G_S`.
    pub fn check_condition3(&self, f: &FactorizedGroup) -> Result<bool> {
        self.check_group(f)?;
        let comm = commutator_of_subgroups(&f.a, &f.b, &f.g)?;
        Ok(comm.is_subgroup_of(&self.radical))
    }

    /// All three conditions; any disagreement is a [`Error::TheoremViolation`].
    pub fn verify_main_theorem(&self, f: &FactorizedGroup) -> Result<ConnectionReport> {
        let c1 = self.check_condition(f, ConditionMode::Full)?;
        let c2 = self.check_condition(f, ConditionMode::PrimePairs)?;
        let c3 = self.check_condition3(f)?;
        if c1.holds != c2.holds || c2.holds != c3 {
            return Err(Error::TheoremViolation(format!(
                "conditions disagree: (1) {}, (2) {}, (3) {} for |A| = {}, |B| = {} in |G| = {}",
                c1.holds,
                c2.holds,
                c3,
                f.a.order(),
                f.b.order(),
                f.g.order()
            )));
        }
        Ok(ConnectionReport {
            condition1: c1.holds,
            condition2: c2.holds,
            condition3: c3,
            witness: c1.witness,
            radical_order: self.radical.order().clone(),
        })
    }

    /// Conjugating `A` by `g` and `B` by `h` keeps `G = A^g B^h` and does
    /// not change the prime-pair condition.
    pub fn verify_conjugation_lemma(
        &self,
        f: &FactorizedGroup,
        g: &Permutation,
        h: &Permutation,
    ) -> Result<bool> {
        for x in [g, h] {
            if !f.g.contains(x)? {
                return Err(Error::NotASubgroup("conjugating element outside G".into()));
            }
        }
        let moved = make_factorized(
            &f.g,
            &conjugate_subgroup(&f.a, g)?,
            &conjugate_subgroup(&f.b, h)?,
            &self.budget,
        )?;
        let before = self.check_condition(f, ConditionMode::PrimePairs)?.holds;
        let after = self
            .check_condition(&moved, ConditionMode::PrimePairs)?
            .holds;
        Ok(before == after)
    }

    /// For an S-connected factorization: `A_S = A ∩ G_S` and `B_S = B ∩ G_S`.
    pub fn radical_intersection_check(&self, f: &FactorizedGroup) -> Result<bool> {
        if !self.check_condition(f, ConditionMode::Full)?.holds {
            return Err(Error::Precondition("A and B are not S-connected".into()));
        }
        for h in [&f.a, &f.b] {
            let own = soluble_radical(h, RadicalMethod::Auto, &self.budget)?;
            let meet = intersection(h, &self.radical, &self.budget)?;
            if !own.same_group(&meet) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn check_condition(
    f: &FactorizedGroup,
    mode: ConditionMode,
    budget: &Budget,
) -> Result<ConditionOutcome> {
    ConnectionContext::new(&f.g, budget)?.check_condition(f, mode)
}

pub fn check_condition3(f: &FactorizedGroup, budget: &Budget) -> Result<bool> {
    let comm = commutator_of_subgroups(&f.a, &f.b, &f.g)?;
    let radical = soluble_radical(&f.g, RadicalMethod::Auto, budget)?;
    Ok(comm.is_subgroup_of(&radical))
}

pub fn verify_main_theorem(f: &FactorizedGroup, budget: &Budget) -> Result<ConnectionReport> {
    ConnectionContext::new(&f.g, budget)?.verify_main_theorem(f)
}

pub fn verify_conjugation_lemma(
    f: &FactorizedGroup,
    g: &Permutation,
    h: &Permutation,
    budget: &Budget,
) -> Result<bool> {
    ConnectionContext::new(&f.g, budget)?.verify_conjugation_lemma(f, g, h)
}

pub fn radical_intersection_check(f: &FactorizedGroup, budget: &Budget) -> Result<bool> {
    ConnectionContext::new(&f.g, budget)?.radical_intersection_check(f)
}
