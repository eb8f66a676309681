use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::series::{closure_under, is_soluble, is_soluble_pair};
use crate::config::{Budget, DEGREE_CEILING};
use crate::error::{Error, Result};
use crate::permcore::{Conjugacy, ElementList, PermGroup, Permutation};

/// Memoized solubility of two-generated subgroups `⟨x, y⟩` of an enumerated
/// group, with `x` and `y` addressed by element index.
///
/// A pair is first moved by simultaneous conjugation so that `x` becomes its
/// class representative; `⟨x, y⟩^t = ⟨x^t, y^t⟩` is isomorphic to `⟨x, y⟩`,
/// so the cached answer is exact for every pair in the orbit.
pub struct PairOracle {
    group: PermGroup,
    conj: Conjugacy,
    memo: DashMap<u64, bool>,
}

impl PairOracle {
    pub fn new(group: &PermGroup, budget: &Budget) -> Result<Self> {
        Ok(PairOracle {
            group: group.clone(),
            conj: Conjugacy::new(group, budget)?,
            memo: DashMap::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn conjugacy(&self) -> &Conjugacy {
        &self.conj
    }

    pub fn elements(&self) -> &ElementList {
        self.conj.elements()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements().index_of(g.images())
    }

    /// Number of distinct pair orbits evaluated so far.
    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    /// Is `⟨x, y⟩` soluble?
    pub fn soluble(&self, x: usize, y: usize) -> bool {
        if x == 0 || y == 0 || x == y {
            return true;
        }
        let els = self.elements();
        let mut buf = Vec::with_capacity(els.degree());
        let class = self.conj.class_of(x);
        let t = self.conj.conjugator_of(x);
        let y = if t == 0 {
            y
        } else {
            let t_inv = els.inverse_index(t, &mut buf);
            els.conjugate_index(y, t_inv, &mut buf)
        };
        let key = (class as u64) << 32 | y as u64;
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let rep = els.perm(self.conj.rep_index(class));
        let v = is_soluble_pair(&rep, &els.perm(y));
        self.memo.insert(key, v);
        v
    }

    /// Does every `y ∈ G` give a soluble `⟨rep, y⟩`, where `rep` represents `class`?
    pub fn class_is_connected_to_all(&self, class: usize) -> bool {
        let x = self.conj.rep_index(class);
        (0..self.elements().len())
            .into_par_iter()
            .all(|y| self.soluble(x, y))
    }

    /// The least pair `(x, y)`, with `x` a class representative in
    /// increasing order and `y` arbitrary, generating an insoluble subgroup.
    pub fn first_insoluble_pair(&self) -> Option<(usize, usize)> {
        let n = self.elements().len();
        (0..self.conj.num_classes()).find_map(|c| {
            let x = self.conj.rep_index(c);
            (0..n)
                .into_par_iter()
                .find_first(|&y| !self.soluble(x, y))
                .map(|y| (x, y))
        })
    }
}

/// Exhaustive two-generator test: `None` when every `⟨a, b⟩` is soluble,
/// otherwise the first insoluble pair found.
pub fn insoluble_two_generated(
    group: &PermGroup,
    budget: &Budget,
) -> Result<Option<(Permutation, Permutation)>> {
    let oracle = PairOracle::new(group, budget)?;
    Ok(oracle
        .first_insoluble_pair()
        .map(|(x, y)| (oracle.elements().perm(x), oracle.elements().perm(y))))
}

/// Two conjugate elements of order `q` generating an insoluble subgroup, if any.
pub fn insoluble_conjugate_pair(
    oracle: &PairOracle,
    q: u128,
) -> Option<(Permutation, Permutation)> {
    let conj = oracle.conjugacy();
    (0..conj.num_classes())
        .filter(|&c| conj.rep_order(c) == q)
        .find_map(|c| {
            let x = conj.rep_index(c);
            conj.class_members(c)
                .into_par_iter()
                .find_first(|&y| !oracle.soluble(x, y))
                .map(|y| (oracle.elements().perm(x), oracle.elements().perm(y)))
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadicalMethod {
    /// Join of the soluble normal subgroups found by normal-subgroup enumeration.
    BruteForce,
    /// Normal closure of the classes whose representative generates a
    /// soluble subgroup with every element.
    Gkps,
    /// Brute force within the subgroup budget, otherwise the pair method.
    Auto,
}

impl std::str::FromStr for RadicalMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruteforce" | "brute-force" => Ok(RadicalMethod::BruteForce),
            "gkps" => Ok(RadicalMethod::Gkps),
            "auto" => Ok(RadicalMethod::Auto),
            _ => Err(Error::InvalidParameters(format!(
                "unknown radical method {s:?}"
            ))),
        }
    }
}

/// The largest soluble normal subgroup.
pub fn soluble_radical(
    group: &PermGroup,
    method: RadicalMethod,
    budget: &Budget,
) -> Result<PermGroup> {
    match method {
        RadicalMethod::BruteForce => radical_bruteforce(group, budget),
        RadicalMethod::Gkps => radical_gkps(&PairOracle::new(group, budget)?, budget),
        RadicalMethod::Auto => {
            if group
                .order_u64()
                .is_some_and(|n| n <= budget.max_subgroup_order)
            {
                radical_bruteforce(group, budget)
            } else {
                radical_gkps(&PairOracle::new(group, budget)?, budget)
            }
        }
    }
}

/// Pair-method radical over an existing oracle, followed by the
/// normality, solubility and quotient checks.
pub fn radical_gkps(oracle: &PairOracle, budget: &Budget) -> Result<PermGroup> {
    let group = oracle.group();
    if group.is_trivial() {
        return Ok(group.clone());
    }
    let conj = oracle.conjugacy();
    let accepted: Vec<Permutation> = (1..conj.num_classes())
        .filter(|&c| oracle.class_is_connected_to_all(c))
        .map(|c| oracle.elements().perm(conj.rep_index(c)))
        .collect();
    let gens: Vec<Permutation> = group.nontrivial_generators().cloned().collect();
    let radical = closure_under(group.degree(), &gens, accepted);
    verify_radical(group, &radical, budget)?;
    Ok(radical)
}

fn radical_bruteforce(group: &PermGroup, budget: &Budget) -> Result<PermGroup> {
    let mut radical = PermGroup::trivial(group.degree());
    for n in normal_subgroups(group, budget)? {
        if is_soluble(&n) && !n.is_subgroup_of(&radical) {
            radical = radical.join(&n)?;
        }
    }
    Ok(radical)
}

/// Every normal subgroup, as joins of normal closures of single classes.
/// Requires `|G|` within the subgroup budget.
pub fn normal_subgroups(group: &PermGroup, budget: &Budget) -> Result<Vec<PermGroup>> {
    let order = group
        .order_u64()
        .filter(|&n| n <= budget.max_subgroup_order);
    if order.is_none() {
        return Err(Error::budget(
            "normal subgroup enumeration",
            group.order(),
            budget.max_subgroup_order,
        ));
    }
    let conj = Conjugacy::new(group, budget)?;
    let gens: Vec<Permutation> = group.nontrivial_generators().cloned().collect();
    let mut class_closures: Vec<PermGroup> = Vec::new();
    for c in 1..conj.num_classes() {
        let n = closure_under(
            group.degree(),
            &gens,
            vec![conj.elements().perm(conj.rep_index(c))],
        );
        push_distinct(&mut class_closures, n);
    }
    let mut all = vec![PermGroup::trivial(group.degree())];
    let mut i = 0;
    while i < all.len() {
        for n in &class_closures {
            if !n.is_subgroup_of(&all[i]) {
                let j = all[i].join(n)?;
                push_distinct(&mut all, j);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| a.order().cmp(b.order()));
    Ok(all)
}

fn push_distinct(list: &mut Vec<PermGroup>, g: PermGroup) -> bool {
    if list.iter().any(|h| h.same_group(&g)) {
        return false;
    }
    list.push(g);
    true
}

/// Checks that `radical` is a soluble normal subgroup of `group` with
/// `group / radical` having trivial radical.
pub fn verify_radical(group: &PermGroup, radical: &PermGroup, budget: &Budget) -> Result<()> {
    let fail = |m: String| Err(Error::TheoremViolation(m));
    if !radical.is_subgroup_of(group) {
        return fail("radical candidate is not a subgroup".into());
    }
    for r in radical.nontrivial_generators() {
        for g in group.nontrivial_generators() {
            if !radical.contains_unchecked(&r.conjugate_by(g)) {
                return fail("radical candidate is not normal".into());
            }
        }
    }
    if !is_soluble(radical) {
        return fail("radical candidate is not soluble".into());
    }
    let quotient = if radical.is_trivial() {
        Some(group.clone())
    } else {
        quotient_action(group, radical, budget)?
    };
    match quotient {
        Some(q) if !has_trivial_radical(&q, budget)? => {
            fail("quotient by radical candidate has a soluble normal subgroup".into())
        }
        Some(_) => Ok(()),
        None => {
            log::warn!("quotient check skipped: index above degree ceiling");
            Ok(())
        }
    }
}

/// Action of `group` on the right cosets of the normal subgroup `normal`,
/// or `None` when the index exceeds the degree ceiling.
pub fn quotient_action(
    group: &PermGroup,
    normal: &PermGroup,
    budget: &Budget,
) -> Result<Option<PermGroup>> {
    let els = group.elements(budget)?;
    let n_els = normal.elements(budget)?;
    let index = els.len() / n_els.len();
    if index > DEGREE_CEILING {
        return Ok(None);
    }
    let mut coset = vec![u32::MAX; els.len()];
    let mut reps = Vec::with_capacity(index);
    let mut buf = Vec::new();
    for g in 0..els.len() {
        if coset[g] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(g);
        let gs = els.get(g);
        for r in n_els.iter() {
            buf.clear();
            buf.extend(r.iter().map(|&p| gs[p as usize]));
            coset[els.index_of(&buf).expect("closed")] = id;
        }
    }
    let mut gens = Vec::new();
    for s in group.nontrivial_generators() {
        let s_idx = els.index_of(s.images()).expect("generator in group");
        let images = reps
            .iter()
            .map(|&g| coset[els.product_index(g, s_idx, &mut buf)] as usize);
        gens.push(Permutation::from_images(images)?);
    }
    Ok(Some(PermGroup::with_degree(index, gens)?))
}

/// A group has trivial soluble radical iff each of its minimal normal
/// subgroups is non-abelian.
pub fn has_trivial_radical(group: &PermGroup, budget: &Budget) -> Result<bool> {
    if group.is_trivial() {
        return Ok(true);
    }
    let conj = Conjugacy::new(group, budget)?;
    let gens: Vec<Permutation> = group.nontrivial_generators().cloned().collect();
    let mut closures: Vec<PermGroup> = Vec::new();
    for c in 1..conj.num_classes() {
        let n = closure_under(
            group.degree(),
            &gens,
            vec![conj.elements().perm(conj.rep_index(c))],
        );
        push_distinct(&mut closures, n);
    }
    for n in &closures {
        let minimal = !closures
            .iter()
            .any(|m| m.order() < n.order() && m.is_subgroup_of(n));
        if minimal && n.is_abelian() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }
    fn a5() -> PermGroup {
        PermGroup::new(vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1, 2]])]).unwrap()
    }
    fn s4() -> PermGroup {
        PermGroup::new(vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap()
    }
    fn s4_x_a5() -> PermGroup {
        PermGroup::new(vec![
            cyc(9, &[&[0, 1]]),
            cyc(9, &[&[0, 1, 2, 3]]),
            cyc(9, &[&[4, 5, 6, 7, 8]]),
            cyc(9, &[&[4, 5, 6]]),
        ])
        .unwrap()
    }

    #[test]
    fn radicals_agree() {
        let b = Budget::default();
        for (g, expect) in [(a5(), 1u64), (s4(), 24), (s4_x_a5(), 24)] {
            let bf = soluble_radical(&g, RadicalMethod::BruteForce, &b).unwrap();
            let gk = soluble_radical(&g, RadicalMethod::Gkps, &b).unwrap();
            assert_eq!(bf.order_u64(), Some(expect));
            assert!(bf.same_group(&gk));
        }
    }

    #[test]
    fn radical_elements_connect_to_everything() {
        let b = Budget::default();
        let g = s4_x_a5();
        let r = soluble_radical(&g, RadicalMethod::Gkps, &b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x = r.random_element(&mut rng);
            let y = g.random_element(&mut rng);
            assert!(is_soluble_pair(&x, &y));
        }
    }

    #[test]
    fn normal_subgroup_counts() {
        let b = Budget::default();
        assert_eq!(normal_subgroups(&s4(), &b).unwrap().len(), 4);
        assert_eq!(normal_subgroups(&a5(), &b).unwrap().len(), 2);
        // 1, S4-side normals {V4, A4, S4} and A5 combine freely: 4 · 2.
        assert_eq!(normal_subgroups(&s4_x_a5(), &b).unwrap().len(), 8);
    }

    #[test]
    fn quotient_by_radical() {
        let b = Budget::default();
        let g = s4_x_a5();
        let r = soluble_radical(&g, RadicalMethod::BruteForce, &b).unwrap();
        let q = quotient_action(&g, &r, &b).unwrap().unwrap();
        assert_eq!(q.order_u64(), Some(60));
        assert!(has_trivial_radical(&q, &b).unwrap());
        assert!(!has_trivial_radical(&s4(), &b).unwrap());
    }

    #[test]
    fn verification_rejects_wrong_candidates() {
        let b = Budget::default();
        let g = s4_x_a5();
        let v4 = PermGroup::new(vec![
            cyc(9, &[&[0, 1], &[2, 3]]),
            cyc(9, &[&[0, 2], &[1, 3]]),
        ])
        .unwrap();
        assert!(matches!(
            verify_radical(&g, &v4, &b),
            Err(Error::TheoremViolation(_))
        ));
        assert!(matches!(
            verify_radical(&a5(), &a5(), &b),
            Err(Error::TheoremViolation(_))
        ));
    }

    #[test]
    fn thompson_check() {
        let b = Budget::default();
        assert!(insoluble_two_generated(&s4(), &b).unwrap().is_none());
        let (x, y) = insoluble_two_generated(&a5(), &b).unwrap().unwrap();
        assert!(!is_soluble(&PermGroup::new(vec![x, y]).unwrap()));
        let oracle = PairOracle::new(&a5(), &b).unwrap();
        let (x, y) = insoluble_conjugate_pair(&oracle, 3).unwrap();
        assert_eq!((x.order(), y.order()), (3, 3));
    }

    #[test]
    fn memo_is_consistent_with_direct_test() {
        let b = Budget::default();
        let oracle = PairOracle::new(&s4_x_a5(), &b).unwrap();
        let els = oracle.elements();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        use rand::Rng;
        for _ in 0..300 {
            let x = rng.random_range(0..els.len());
            let y = rng.random_range(0..els.len());
            assert_eq!(
                oracle.soluble(x, y),
                is_soluble_pair(&els.perm(x), &els.perm(y))
            );
        }
    }
}
