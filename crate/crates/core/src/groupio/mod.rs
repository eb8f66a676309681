//! Generator files, the built-in group library, products, and the
//! desk-scale oracles: subgroup lattices and factorization enumeration.
//!
//! Non-prime fields `GF(p^e)` behind `psl2_q` / `pgl2_q` are built from the
//! fixed irreducible polynomials in [`fields::IRREDUCIBLES`].

pub mod fields;
mod lattice;
mod library;
mod parse;
mod random;

pub use lattice::{
    enumerate_subgroups, enumerate_subgroups_partial, CatalogEntry, SubgroupCatalog,
};
pub use library::{
    alternating, builtin, builtin_with, cyclic, dihedral, direct_product, fixture_names, pgl2,
    psl2, symmetric, PSL2_FIELDS,
};
pub use parse::{parse_cycles, parse_generators, render_generators, GeneratorFile};
pub use random::{cyclic_tower, cyclic_wreath, random_soluble_group};

use crate::config::Budget;
use crate::connection::FactorizedGroup;
use crate::error::{Error, Result};
use crate::permcore::PermGroup;

/// Loads `builtin:NAME` from the library, anything else as a generator file path.
pub fn load(src: &str, budget: &Budget) -> Result<PermGroup> {
    if let Some(name) = src.strip_prefix("builtin:") {
        return builtin_with(name, budget);
    }
    let text = std::fs::read_to_string(src).map_err(|e| Error::Io(format!("{src}: {e}")))?;
    let file = GeneratorFile::parse(&text, src)?;
    if file.degree > budget.max_degree {
        return Err(Error::budget("degree", file.degree, budget.max_degree));
    }
    file.group()
}

/// `A ∩ B`, enumerating the smaller of the two.
pub fn subgroup_intersection(a: &PermGroup, b: &PermGroup, budget: &Budget) -> Result<PermGroup> {
    crate::structure::intersection(a, b, budget)
}

/// Every ordered pair `(A, B)` of subgroups with `G = AB`.
pub fn enumerate_factorizations(g: &PermGroup, budget: &Budget) -> Result<Vec<FactorizedGroup>> {
    let catalog = enumerate_subgroups(g, budget)?;
    Ok(factorizations_of(g, &catalog))
}

/// Factorizations read off an existing complete catalog of `g`.
pub fn factorizations_of(g: &PermGroup, catalog: &SubgroupCatalog) -> Vec<FactorizedGroup> {
    catalog
        .factorization_pairs()
        .into_iter()
        .map(|(i, j, k)| {
            FactorizedGroup::from_verified(
                g.clone(),
                catalog.subgroups[i].clone(),
                catalog.subgroups[j].clone(),
                k as u64,
            )
        })
        .collect()
}

/// Named groups used as the standard test corpus, in increasing order.
pub fn corpus(max_order: u64) -> Vec<(String, PermGroup)> {
    let mut names: Vec<String> = Vec::new();
    for n in 2..=7 {
        names.push(format!("A{n}"));
        names.push(format!("S{n}"));
    }
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 10, 12] {
        names.push(format!("C{n}"));
    }
    for n in [6, 8, 10, 12, 14, 18, 20] {
        names.push(format!("D{n}"));
    }
    for q in PSL2_FIELDS {
        names.push(format!("psl2_{q}"));
    }
    for q in [4, 5, 7, 8, 9, 11] {
        names.push(format!("pgl2_{q}"));
    }
    for p in [
        "S3xC5", "S4xC5", "A4xC3", "S3xS3", "A5xC2", "A5xC3", "S4xA5", "A4xA5", "S5xC2",
    ] {
        names.push(p.to_string());
    }
    let mut out: Vec<(String, PermGroup)> = names
        .into_iter()
        .filter_map(|n| builtin(&n).ok().map(|g| (n, g)))
        .filter(|(_, g)| g.order_u64().is_some_and(|o| o <= max_order))
        .collect();
    out.sort_by(|a, b| a.1.order().cmp(b.1.order()).then_with(|| a.0.cmp(&b.0)));
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_builtin_and_file() {
        let b = Budget::default();
        assert_eq!(load("builtin:A5", &b).unwrap().order_u64(), Some(60));
        let dir = std::env::temp_dir().join(format!("sconn-load-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("s3.gens");
        std::fs::write(&path, "degree 3\n(1,2)\n(1,2,3)\n").unwrap();
        assert_eq!(
            load(path.to_str().unwrap(), &b).unwrap().order_u64(),
            Some(6)
        );
        assert!(matches!(load("/nonexistent/file", &b), Err(Error::Io(_))));
        assert!(matches!(
            load("builtin:Q8", &b),
            Err(Error::UnknownGroup(_))
        ));
        std::fs::remove_dir_all(dir).ok();
    }

    #[test]
    fn intersections() {
        let b = Budget::default();
        let a4 = builtin("A4_in_A5").unwrap();
        let c5 = builtin("C5_in_A5").unwrap();
        assert!(subgroup_intersection(&a4, &c5, &b).unwrap().is_trivial());
        assert!(subgroup_intersection(&a4, &a4, &b).unwrap().same_group(&a4));
        let s3 = PermGroup::new(vec![
            crate::Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
            crate::Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap(),
        ])
        .unwrap();
        let t = PermGroup::new(vec![
            crate::Permutation::from_cycles(4, &[vec![2, 3]]).unwrap()
        ])
        .unwrap();
        assert!(subgroup_intersection(&s3, &t, &b).unwrap().is_trivial());
    }

    #[test]
    fn corpus_is_sorted_and_bounded() {
        let c = corpus(500);
        assert!(c.windows(2).all(|w| w[0].1.order() <= w[1].1.order()));
        assert!(c.iter().all(|(_, g)| g.order_u64().unwrap() <= 500));
        assert!(c.iter().any(|(n, _)| n == "A5"));
    }
}
