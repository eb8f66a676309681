//! Prime graph and soluble graph of a finite group, and independent primes.
//!
//! Soluble edges use pairs of elements. If some soluble `H ≤ G` has order
//! divisible by `pq`, a Hall `{p, q}`-subgroup of `H` holds a `p`-element
//! `x` and a `q`-element `y`, and `⟨x, y⟩ ≤ H` is soluble. Conversely a
//! soluble `⟨x, y⟩` already has order divisible by `pq`. Existence of such a
//! pair is unchanged by simultaneous conjugation, so `x` runs over class
//! representatives only.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::groupio::SubgroupCatalog;
use crate::liearith::arith::{is_prime, prime_divisors_u64, prime_power};
use crate::permcore::{PermGroup, Permutation};
use crate::structure::{is_soluble, is_soluble_pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Prime,
    Soluble,
}

impl std::str::FromStr for GraphKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime" => Ok(GraphKind::Prime),
            "soluble" | "solvable" => Ok(GraphKind::Soluble),
            _ => Err(Error::InvalidParameters(format!(
                "unknown graph kind {s:?}"
            ))),
        }
    }
}

impl std::fmt::Display for GraphKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GraphKind::Prime => "prime",
            GraphKind::Soluble => "soluble",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeGraph {
    #[serde(rename = "group")]
    pub group_label: String,
    pub kind: GraphKind,
    /// Ascending.
    pub vertices: Vec<u64>,
    /// Each pair ascending, list sorted.
    pub edges: Vec<(u64, u64)>,
}

impl PrimeGraph {
    pub fn has_edge(&self, p: u64, q: u64) -> bool {
        let e = if p < q { (p, q) } else { (q, p) };
        self.edges.binary_search(&e).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::InvalidParameters(format!(
                "unknown graph format {s:?}"
            ))),
        }
    }
}

fn group_primes(g: &PermGroup) -> Result<Vec<u64>> {
    let n = g
        .order_u64()
        .ok_or_else(|| Error::budget("group order", g.order(), u64::MAX))?;
    Ok(prime_divisors_u64(n))
}

fn pairs_of(vertices: &[u64]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for (i, &p) in vertices.iter().enumerate() {
        for &q in &vertices[i + 1..] {
            out.push((p, q));
        }
    }
    out
}

fn check_enumerable(g: &PermGroup, budget: &Budget) -> Result<()> {
    match g.order_u64() {
        Some(n) if n <= budget.max_enumeration_order => Ok(()),
        _ => Err(Error::budget(
            "element enumeration",
            g.order(),
            budget.max_enumeration_order,
        )),
    }
}

/// Distinct element orders.
fn element_orders(g: &PermGroup, budget: &Budget) -> Result<BTreeSet<u128>> {
    check_enumerable(g, budget)?;
    let mut orders = BTreeSet::new();
    g.for_each_element(|x| {
        orders.insert(x.order());
        true
    });
    Ok(orders)
}

/// `p ~ q` iff some element has order divisible by `pq`.
pub fn prime_graph(g: &PermGroup, label: &str, budget: &Budget) -> Result<PrimeGraph> {
    let vertices = group_primes(g)?;
    let orders = element_orders(g, budget)?;
    let edges = pairs_of(&vertices)
        .into_iter()
        .filter(|&(p, q)| orders.iter().any(|&o| o % (p as u128 * q as u128) == 0))
        .collect();
    Ok(PrimeGraph {
        group_label: label.to_string(),
        kind: GraphKind::Prime,
        vertices,
        edges,
    })
}

/// Non-identity elements of prime-power order, bucketed by prime.
struct PrimeElements {
    buckets: HashMap<u64, Vec<Permutation>>,
}

impl PrimeElements {
    fn collect(g: &PermGroup, primes: &[u64], budget: &Budget) -> Result<Self> {
        check_enumerable(g, budget)?;
        let mut buckets: HashMap<u64, Vec<Permutation>> =
            primes.iter().map(|&p| (p, Vec::new())).collect();
        g.for_each_element(|x| {
            if let Some((p, _)) = u64::try_from(x.order()).ok().and_then(prime_power) {
                if let Some(b) = buckets.get_mut(&p) {
                    b.push(x.clone());
                }
            }
            true
        });
        for b in buckets.values_mut() {
            b.sort_unstable();
        }
        Ok(PrimeElements { buckets })
    }

    fn get(&self, p: u64) -> &[Permutation] {
        self.buckets.get(&p).map_or(&[], |v| v.as_slice())
    }

    /// Representatives of the `G`-classes within the `p`-elements.
    fn class_reps(&self, g: &PermGroup, p: u64) -> Vec<Permutation> {
        let els = self.get(p);
        let index: HashMap<&Permutation, usize> =
            els.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let gens: Vec<&Permutation> = g.nontrivial_generators().collect();
        let mut seen = vec![false; els.len()];
        let mut reps = Vec::new();
        for start in 0..els.len() {
            if seen[start] {
                continue;
            }
            reps.push(els[start].clone());
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for s in &gens {
                    let j = index[&els[i].conjugate_by(s)];
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        reps
    }
}

/// Is there a `p`-element `x` and a `q`-element `y` with `⟨x, y⟩` soluble?
fn soluble_edge(
    g: &PermGroup,
    elems: &PrimeElements,
    p: u64,
    q: u64,
    budget: &Budget,
) -> Result<bool> {
    // Representatives come from the larger bucket; the scan runs over the smaller one.
    let (p, q) = if elems.get(p).len() >= elems.get(q).len() {
        (p, q)
    } else {
        (q, p)
    };
    let reps = elems.class_reps(g, p);
    let ys = elems.get(q);
    let pairs = reps.len() as u64 * ys.len() as u64;
    if pairs > budget.max_pair_checks {
        return Err(Error::budget("pair checks", pairs, budget.max_pair_checks));
    }
    Ok(reps
        .iter()
        .any(|x| ys.par_iter().any(|y| is_soluble_pair(x, y))))
}

/// `p ~ q` iff `G` has a soluble subgroup of order divisible by `pq`.
pub fn soluble_graph(g: &PermGroup, label: &str, budget: &Budget) -> Result<PrimeGraph> {
    let vertices = group_primes(g)?;
    let mut edges = Vec::new();
    if is_soluble(g) {
        edges = pairs_of(&vertices);
    } else if vertices.len() > 1 {
        let orders = element_orders(g, budget)?;
        let elems = PrimeElements::collect(g, &vertices, budget)?;
        for (p, q) in pairs_of(&vertices) {
            let cyclic = orders.iter().any(|&o| o % (p as u128 * q as u128) == 0);
            if cyclic || soluble_edge(g, &elems, p, q, budget)? {
                edges.push((p, q));
            }
        }
    }
    Ok(PrimeGraph {
        group_label: label.to_string(),
        kind: GraphKind::Soluble,
        vertices,
        edges,
    })
}

/// Soluble graph read off a complete subgroup catalog.
pub fn soluble_graph_from_catalog(
    g: &PermGroup,
    label: &str,
    catalog: &SubgroupCatalog,
) -> Result<PrimeGraph> {
    if !catalog.complete {
        return Err(Error::Precondition("subgroup catalog is incomplete".into()));
    }
    let vertices = group_primes(g)?;
    let soluble_orders: BTreeSet<usize> = catalog
        .subgroups
        .iter()
        .enumerate()
        .filter(|(_, h)| is_soluble(h))
        .map(|(i, _)| catalog.order(i))
        .collect();
    let edges = pairs_of(&vertices)
        .into_iter()
        .filter(|&(p, q)| soluble_orders.iter().any(|&o| (o as u64).is_multiple_of(p * q)))
        .collect();
    Ok(PrimeGraph {
        group_label: label.to_string(),
        kind: GraphKind::Soluble,
        vertices,
        edges,
    })
}

/// `G` has no soluble subgroup of order divisible by `pq`.
pub fn are_independent(g: &PermGroup, p: u64, q: u64, budget: &Budget) -> Result<bool> {
    if p == q {
        return Err(Error::InvalidParameters(format!(
            "primes must differ, got {p} twice"
        )));
    }
    let primes = group_primes(g)?;
    for r in [p, q] {
        if !is_prime(r) || !primes.contains(&r) {
            return Err(Error::InvalidParameters(format!(
                "{r} is not a prime divisor of |G| = {}",
                g.order()
            )));
        }
    }
    if is_soluble(g) {
        return Ok(false);
    }
    let orders = element_orders(g, budget)?;
    if orders.iter().any(|&o| o % (p as u128 * q as u128) == 0) {
        return Ok(false);
    }
    let elems = PrimeElements::collect(g, &[p, q], budget)?;
    Ok(!soluble_edge(g, &elems, p, q, budget)?)
}

pub fn export_graph(graph: &PrimeGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => serde_json::to_string(graph).expect("graph serializes"),
        ExportFormat::Dot => {
            let mut s = String::from("graph G {\n");
            let _ = writeln!(
                s,
                "  label=\"{} {}\";",
                graph.group_label.replace('"', "'"),
                graph.kind
            );
            for v in &graph.vertices {
                let _ = writeln!(s, "  {v} [label=\"{v}\"];");
            }
            for (p, q) in &graph.edges {
                let _ = writeln!(s, "  {p} -- {q};");
            }
            s.push_str("}\n");
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupio::{builtin, enumerate_subgroups};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn prime_graph_examples() {
        let a5 = prime_graph(&builtin("A5").unwrap(), "A5", &b()).unwrap();
        assert_eq!(a5.vertices, vec![2, 3, 5]);
        assert!(a5.edges.is_empty());
        let c6 = prime_graph(&builtin("C6").unwrap(), "C6", &b()).unwrap();
        assert_eq!(c6.edges, vec![(2, 3)]);
        let s4 = prime_graph(&builtin("S4").unwrap(), "S4", &b()).unwrap();
        assert!(s4.edges.is_empty());
    }

    #[test]
    fn soluble_graph_examples() {
        let a5 = soluble_graph(&builtin("A5").unwrap(), "A5", &b()).unwrap();
        assert_eq!(a5.edges, vec![(2, 3), (2, 5)]);
        assert_eq!(
            export_graph(&a5, ExportFormat::Json),
            r#"{"group":"A5","kind":"soluble","vertices":[2,3,5],"edges":[[2,3],[2,5]]}"#
        );
        let s4 = soluble_graph(&builtin("S4").unwrap(), "S4", &b()).unwrap();
        assert_eq!(s4.edges, vec![(2, 3)]);
        let l16 = soluble_graph(&builtin("psl2_16").unwrap(), "psl2_16", &b()).unwrap();
        assert!(!l16.has_edge(17, 5));
    }

    #[test]
    fn independence_examples() {
        let a5 = builtin("A5").unwrap();
        assert!(are_independent(&a5, 3, 5, &b()).unwrap());
        assert!(are_independent(&a5, 5, 3, &b()).unwrap());
        assert!(!are_independent(&a5, 2, 3, &b()).unwrap());
        assert!(are_independent(&a5, 7, 3, &b()).is_err());
        assert!(are_independent(&a5, 3, 3, &b()).is_err());
        assert!(are_independent(&a5, 4, 3, &b()).is_err());
    }

    #[test]
    fn catalog_oracle_agrees_on_small_groups() {
        for name in ["A5", "S5", "psl2_7", "A4xC3", "S3xS3"] {
            let g = builtin(name).unwrap();
            let cat = enumerate_subgroups(&g, &b()).unwrap();
            assert_eq!(
                soluble_graph(&g, name, &b()).unwrap(),
                soluble_graph_from_catalog(&g, name, &cat).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn dot_export() {
        let c6 = prime_graph(&builtin("C6").unwrap(), "C6", &b()).unwrap();
        let dot = export_graph(&c6, ExportFormat::Dot);
        assert_eq!(dot, "graph G {\n  label=\"C6 prime\";\n  2 [label=\"2\"];\n  3 [label=\"3\"];\n  2 -- 3;\n}\n");
        let a5 = prime_graph(&builtin("A5").unwrap(), "A5", &b()).unwrap();
        assert!(!export_graph(&a5, ExportFormat::Dot).contains("--"));
    }
}
