use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::elements::ElementList;
use super::perm::{Permutation, Point};
use crate::config::{Budget, DEGREE_CEILING};
use crate::error::{Error, Result};

/// One level of a stabilizer chain.
#[derive(Clone)]
struct Level {
    base: Point,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// Orbit of `base` under `gens`, in discovery order.
    orbit: Vec<Point>,
    /// `transversal[x]` maps `base` to `x`; `inverse[x]` is its inverse.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        inverse[base] = Some(Permutation::identity(degree));
        Level {
            base: base as Point,
            gens: Vec::new(),
            orbit: vec![base as Point],
            transversal,
            inverse,
        }
    }

    fn add_generator(&mut self, h: Permutation) {
        self.gens.push(h);
        let h = self.gens.last().unwrap();
        let mut frontier = Vec::new();
        for idx in 0..self.orbit.len() {
            let x = self.orbit[idx] as usize;
            let y = h.image(x);
            if self.transversal[y].is_none() {
                let u = self.transversal[x].as_ref().unwrap().compose(h);
                self.inverse[y] = Some(u.inverse());
                self.transversal[y] = Some(u);
                self.orbit.push(y as Point);
                frontier.push(y);
            }
        }
        while let Some(x) = frontier.pop() {
            for s in &self.gens {
                let y = s.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().compose(s);
                    self.inverse[y] = Some(u.inverse());
                    self.transversal[y] = Some(u);
                    self.orbit.push(y as Point);
                    frontier.push(y);
                }
            }
        }
    }
}

#[derive(Clone)]
struct Chain {
    levels: Vec<Level>,
    order: BigUint,
}

/// A permutation group given by generators, carrying a deterministic
/// stabilizer chain. Order and membership are exact.
///
/// Base points are the least moved point of each new residue, so the chain
/// is a function of the generator sequence alone.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<Chain>,
}

impl PermGroup {
    /// Builds the group generated by a non-empty list of equal-degree permutations.
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators.first().ok_or(Error::EmptyGenerators)?.degree();
        Self::with_degree(degree, generators)
    }

    /// Like [`PermGroup::new`], but accepts an empty list (the identity group of `degree`).
    pub fn with_degree(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 || degree > DEGREE_CEILING {
            return Err(Error::InvalidParameters(format!(
                "degree {degree} out of range"
            )));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut group = PermGroup {
            degree,
            generators: Vec::new(),
            chain: Arc::new(Chain {
                levels: Vec::new(),
                order: BigUint::one(),
            }),
        };
        for g in generators {
            group.extend_unchecked(g);
        }
        Ok(group)
    }

    /// Like [`PermGroup::new`] but also enforces the degree budget.
    pub fn build(generators: Vec<Permutation>, budget: &Budget) -> Result<Self> {
        if let Some(g) = generators.first() {
            if g.degree() > budget.max_degree {
                return Err(Error::budget("degree", g.degree(), budget.max_degree));
            }
        }
        Self::new(generators)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::with_degree(degree, Vec::new()).expect("valid degree")
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Generators as supplied (identity generators are kept).
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Generators with identities removed.
    pub fn nontrivial_generators(&self) -> impl Iterator<Item = &Permutation> {
        self.generators.iter().filter(|g| !g.is_identity())
    }

    pub fn order(&self) -> &BigUint {
        &self.chain.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.chain.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.levels.is_empty()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base as usize).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.chain.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Sifts `g` from `start`; returns the residue and the level where it failed
    /// (`levels.len()` when it passed every level).
    fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let levels = &self.chain.levels;
        let mut h: Vec<Point> = g.images().to_vec();
        let mut tmp = vec![0 as Point; self.degree];
        for (l, level) in levels.iter().enumerate().skip(start) {
            let x = h[level.base as usize] as usize;
            match &level.inverse[x] {
                None => return (Permutation::from_vec_unchecked(h), l),
                Some(ui) => {
                    let ui = ui.images();
                    for (t, &hx) in tmp.iter_mut().zip(h.iter()) {
                        *t = ui[hx as usize];
                    }
                    std::mem::swap(&mut h, &mut tmp);
                }
            }
        }
        (Permutation::from_vec_unchecked(h), levels.len())
    }

    /// Exact membership; errors on a degree mismatch.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.contains_unchecked(g))
    }

    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        let (h, j) = self.sift(g, 0);
        j == self.chain.levels.len() && h.is_identity()
    }

    /// Adds a generator; returns whether the group grew.
    pub fn extend(&mut self, g: Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.extend_unchecked(g))
    }

    pub(crate) fn extend_unchecked(&mut self, g: Permutation) -> bool {
        let (h, j) = self.sift(&g, 0);
        self.generators.push(g);
        if j == self.chain.levels.len() && h.is_identity() {
            return false;
        }
        let degree = self.degree;
        let chain = Arc::make_mut(&mut self.chain);
        if j == chain.levels.len() {
            let b = h.first_moved_point().expect("non-identity residue");
            chain.levels.push(Level::new(b, degree));
        }
        for level in chain.levels.iter_mut().take(j + 1) {
            level.add_generator(h.clone());
        }
        self.complete_from(j);
        true
    }

    /// Deterministic Schreier–Sims: levels above `top` are complete on entry.
    fn complete_from(&mut self, top: usize) {
        let degree = self.degree;
        let mut i = top as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.failing_schreier_generator(lvl) {
                Some((h, j)) => {
                    let chain = Arc::make_mut(&mut self.chain);
                    if j == chain.levels.len() {
                        let b = h.first_moved_point().expect("non-identity residue");
                        chain.levels.push(Level::new(b, degree));
                    }
                    for level in chain.levels[lvl + 1..=j].iter_mut() {
                        level.add_generator(h.clone());
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        let chain = Arc::make_mut(&mut self.chain);
        chain.order = chain
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    fn failing_schreier_generator(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.chain.levels[lvl];
        let nlev = self.chain.levels.len();
        for &beta in &level.orbit {
            let u_beta = level.transversal[beta as usize].as_ref().unwrap();
            for s in &level.gens {
                let gb = s.image(beta as usize);
                let g1 = u_beta.compose(s);
                let u_gb = level.transversal[gb].as_ref().unwrap();
                if &g1 == u_gb {
                    continue;
                }
                let schreier = g1.compose(level.inverse[gb].as_ref().unwrap());
                let (h, j) = self.sift(&schreier, lvl + 1);
                if j < nlev || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains_unchecked(g))
    }

    /// Equality as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Every element, sorted lexicographically by image sequence.
    pub fn elements(&self, budget: &Budget) -> Result<ElementList> {
        let n = self
            .order_u64()
            .filter(|&n| n <= budget.max_enumeration_order)
            .ok_or_else(|| {
                Error::budget(
                    "element enumeration",
                    self.order(),
                    budget.max_enumeration_order,
                )
            })?;
        let degree = self.degree;
        let mut cur: Vec<Point> = (0..degree as Point).collect();
        for level in self.chain.levels.iter().rev() {
            let count = cur.len() / degree;
            let mut next = Vec::with_capacity(count * level.orbit.len() * degree);
            for e in cur.chunks_exact(degree) {
                for &x in &level.orbit {
                    let u = level.transversal[x as usize].as_ref().unwrap().images();
                    next.extend(e.iter().map(|&p| u[p as usize]));
                }
            }
            cur = next;
        }
        debug_assert_eq!(cur.len() as u64, n * degree as u64);
        Ok(ElementList::from_unsorted(degree, cur))
    }

    /// Visits every element (in chain order, not sorted) until `f` returns `false`.
    pub fn for_each_element<F: FnMut(&Permutation) -> bool>(&self, mut f: F) {
        fn rec<F: FnMut(&Permutation) -> bool>(
            levels: &[Level],
            acc: Permutation,
            f: &mut F,
        ) -> bool {
            match levels.split_last() {
                None => f(&acc),
                Some((level, rest)) => {
                    for &x in &level.orbit {
                        let u = level.transversal[x as usize].as_ref().unwrap();
                        if !rec(rest, acc.compose(u), f) {
                            return false;
                        }
                    }
                    true
                }
            }
        }
        // Deepest level applies first.
        rec(
            &self.chain.levels,
            Permutation::identity(self.degree),
            &mut f,
        );
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.chain.levels.iter().rev() {
            let x = level.orbit[rng.random_range(0..level.orbit.len())];
            g = g.compose(level.transversal[x as usize].as_ref().unwrap());
        }
        g
    }

    /// The group generated by `self` and `other`.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut g = self.clone();
        for x in other.generators() {
            g.extend_unchecked(x.clone());
        }
        Ok(g)
    }

    /// True when all generators commute pairwise.
    pub fn is_abelian(&self) -> bool {
        let gens: Vec<&Permutation> = self.nontrivial_generators().collect();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens [",
            self.degree,
            self.order()
        )?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}
