use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::liearith::arith::prime_power;
use crate::permcore::{ElementList, PermGroup, Permutation};

/// Largest order for which a full multiplication table is cached.
const TABLE_LIMIT: usize = 4096;

struct Multiplier {
    elements: ElementList,
    table: Option<Vec<u32>>,
    buf: Vec<crate::permcore::Point>,
}

impl Multiplier {
    fn new(elements: ElementList) -> Self {
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut buf = Vec::new();
            let mut t = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    t[x * n + y] = elements.product_index(x, y, &mut buf) as u32;
                }
            }
            t
        });
        Multiplier {
            elements,
            table,
            buf: Vec::new(),
        }
    }

    #[inline]
    fn mul(&mut self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.elements.len() + y] as usize,
            None => self.elements.product_index(x, y, &mut self.buf),
        }
    }
}

struct Node {
    bits: FixedBitSet,
    elems: Vec<u32>,
    gens: Vec<u32>,
}

/// Every subgroup of a small group, each stored both as a [`PermGroup`] and
/// as a bit set over the parent's sorted element list.
pub struct SubgroupCatalog {
    pub subgroups: Vec<PermGroup>,
    /// False only when a partial enumeration stopped early.
    pub complete: bool,
    elements: ElementList,
    members: Vec<FixedBitSet>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub order: u64,
    pub generators: Vec<String>,
}

impl SubgroupCatalog {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Elements of the parent group; bit `i` of a member set refers to entry `i`.
    pub fn elements(&self) -> &ElementList {
        &self.elements
    }

    pub fn members(&self, i: usize) -> &FixedBitSet {
        &self.members[i]
    }

    pub fn order(&self, i: usize) -> usize {
        self.members[i].count_ones(..)
    }

    pub fn intersection_order(&self, i: usize, j: usize) -> usize {
        self.members[i].intersection_count(&self.members[j])
    }

    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        self.members[i].is_subset(&self.members[j])
    }

    /// Position of `h` in the catalog.
    pub fn position(&self, h: &PermGroup) -> Option<usize> {
        let n = h.order_u64()? as usize;
        (0..self.len()).find(|&i| self.order(i) == n && self.subgroups[i].same_group(h))
    }

    /// Number of subgroups of order exactly `n`.
    pub fn count_of_order(&self, n: usize) -> usize {
        (0..self.len()).filter(|&i| self.order(i) == n).count()
    }

    /// Number of Sylow `p`-subgroups, read off the catalog.
    pub fn sylow_count(&self, p: u64) -> usize {
        let mut n = self.elements.len();
        let mut sylow = 1;
        while n.is_multiple_of(p as usize) {
            n /= p as usize;
            sylow *= p as usize;
        }
        self.count_of_order(sylow)
    }

    /// JSON export: one `{order, generators}` object per subgroup, 1-based cycles.
    pub fn export(&self) -> Vec<CatalogEntry> {
        self.subgroups
            .iter()
            .map(|h| CatalogEntry {
                order: h.order_u64().unwrap_or(0),
                generators: h
                    .generators()
                    .iter()
                    .map(|g| g.to_cycle_string(1, ","))
                    .collect(),
            })
            .collect()
    }

    /// Ordered pairs `(i, j, |A ∩ B|)` with `|A|·|B| = |G|·|A ∩ B|`.
    pub fn factorization_pairs(&self) -> Vec<(usize, usize, usize)> {
        let g = self.elements.len();
        let orders: Vec<usize> = (0..self.len()).map(|i| self.order(i)).collect();
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                let prod = orders[i] * orders[j];
                if prod < g || !prod.is_multiple_of(g) {
                    continue;
                }
                let k = self.intersection_order(i, j);
                if prod == g * k {
                    out.push((i, j, k));
                }
            }
        }
        out
    }
}

/// All subgroups of `g`, by joining cyclic subgroups of prime-power order
/// until nothing new appears. Requires `|G|` within the subgroup budget.
pub fn enumerate_subgroups(g: &PermGroup, budget: &Budget) -> Result<SubgroupCatalog> {
    let n = g.order_u64().filter(|&n| n <= budget.max_subgroup_order);
    if n.is_none() {
        return Err(Error::budget(
            "subgroup enumeration",
            g.order(),
            budget.max_subgroup_order,
        ));
    }
    saturate(g, budget, None)
}

/// As [`enumerate_subgroups`] but for any group within the element
/// enumeration budget, stopping once `max_subgroups` have been found.
pub fn enumerate_subgroups_partial(
    g: &PermGroup,
    budget: &Budget,
    max_subgroups: usize,
) -> Result<SubgroupCatalog> {
    saturate(g, budget, Some(max_subgroups))
}

fn saturate(g: &PermGroup, budget: &Budget, cap: Option<usize>) -> Result<SubgroupCatalog> {
    let elements = g.elements(budget)?;
    let n = elements.len();
    let mut mul = Multiplier::new(elements);

    // Cyclic subgroups of prime-power order; every subgroup is generated by
    // its elements of prime-power order.
    let mut seeds: Vec<(u32, FixedBitSet)> = Vec::new();
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    for x in 1..n {
        if prime_power(mul.elements.perm(x).order() as u64).is_none() {
            continue;
        }
        let mut bits = FixedBitSet::with_capacity(n);
        let mut y = x;
        while y != 0 {
            bits.insert(y);
            y = mul.mul(y, x);
        }
        bits.insert(0);
        if seen.insert(bits.clone(), ()).is_none() {
            seeds.push((x as u32, bits));
        }
    }

    let mut trivial = FixedBitSet::with_capacity(n);
    trivial.insert(0);
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    index.insert(trivial.clone(), 0);
    let mut nodes = vec![Node {
        bits: trivial,
        elems: vec![0],
        gens: Vec::new(),
    }];
    let mut complete = true;
    let mut i = 0;
    'outer: while i < nodes.len() {
        for (s, seed_bits) in &seeds {
            if seed_bits.is_subset(&nodes[i].bits) {
                continue;
            }
            let joined = join(&mut mul, &nodes[i], *s);
            if index.contains_key(&joined.bits) {
                continue;
            }
            index.insert(joined.bits.clone(), nodes.len());
            nodes.push(joined);
            if cap.is_some_and(|c| nodes.len() >= c) {
                complete = false;
                break 'outer;
            }
        }
        i += 1;
    }
    if !complete {
        log::debug!(
            "partial subgroup enumeration stopped at {} subgroups",
            nodes.len()
        );
    }

    nodes.sort_by(|a, b| {
        a.elems
            .len()
            .cmp(&b.elems.len())
            .then_with(|| a.bits.ones().cmp(b.bits.ones()))
    });
    let degree = g.degree();
    let elements = mul.elements;
    let subgroups = nodes
        .iter()
        .map(|node| {
            let gens: Vec<Permutation> = node
                .gens
                .iter()
                .map(|&x| elements.perm(x as usize))
                .collect();
            PermGroup::with_degree(degree, gens)
        })
        .collect::<Result<Vec<_>>>()?;
    let members = nodes.into_iter().map(|node| node.bits).collect();
    Ok(SubgroupCatalog {
        subgroups,
        complete,
        elements,
        members,
    })
}

/// `⟨H, s⟩` as a union of right cosets of `H`.
fn join(mul: &mut Multiplier, h: &Node, s: u32) -> Node {
    let mut bits = h.bits.clone();
    let mut elems = h.elems.clone();
    let mut gens = h.gens.clone();
    gens.push(s);
    let mut reps = vec![0usize];
    let mut k = 0;
    while k < reps.len() {
        let y = reps[k];
        k += 1;
        for &t in &gens {
            let z = mul.mul(y, t as usize);
            if bits.contains(z) {
                continue;
            }
            for &x in &h.elems {
                let w = mul.mul(x as usize, z);
                bits.insert(w);
                elems.push(w as u32);
            }
            reps.push(z);
        }
    }
    Node { bits, elems, gens }
}
