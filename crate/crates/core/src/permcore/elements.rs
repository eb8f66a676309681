use serde::Serialize;

use super::group::PermGroup;
use super::perm::{Permutation, Point};
use crate::config::Budget;
use crate::error::Result;

/// All elements of a group, stored flat and sorted lexicographically by
/// image sequence. Index 0 is always the identity.
#[derive(Clone)]
pub struct ElementList {
    degree: usize,
    data: Vec<Point>,
}

impl ElementList {
    pub(crate) fn from_unsorted(degree: usize, data: Vec<Point>) -> Self {
        let mut rows: Vec<&[Point]> = data.chunks_exact(degree).collect();
        rows.sort_unstable();
        rows.dedup();
        let mut sorted = Vec::with_capacity(rows.len() * degree);
        for r in rows {
            sorted.extend_from_slice(r);
        }
        ElementList {
            degree,
            data: sorted,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[Point] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    pub fn perm(&self, i: usize) -> Permutation {
        Permutation::from_slice_unchecked(self.get(i))
    }

    pub fn index_of(&self, images: &[Point]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(images) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Point]> {
        self.data.chunks_exact(self.degree)
    }

    /// Index of `x^g = g⁻¹ x g`, with `x` and `g` given by index.
    pub(crate) fn conjugate_index(&self, x: usize, g: usize, buf: &mut Vec<Point>) -> usize {
        let (xs, gs) = (self.get(x), self.get(g));
        buf.clear();
        buf.resize(self.degree, 0);
        for i in 0..self.degree {
            buf[gs[i] as usize] = gs[xs[i] as usize];
        }
        self.index_of(buf).expect("group closed under conjugation")
    }

    /// Index of the product `x · y` (x first).
    pub(crate) fn product_index(&self, x: usize, y: usize, buf: &mut Vec<Point>) -> usize {
        let (xs, ys) = (self.get(x), self.get(y));
        buf.clear();
        buf.extend(xs.iter().map(|&p| ys[p as usize]));
        self.index_of(buf)
            .expect("group closed under multiplication")
    }

    pub(crate) fn inverse_index(&self, x: usize, buf: &mut Vec<Point>) -> usize {
        let xs = self.get(x);
        buf.clear();
        buf.resize(self.degree, 0);
        for (i, &p) in xs.iter().enumerate() {
            buf[p as usize] = i as Point;
        }
        self.index_of(buf).expect("group closed under inversion")
    }
}

/// Conjugacy class representatives and sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReps {
    pub reps: Vec<Permutation>,
    pub class_sizes: Vec<usize>,
}

/// Full conjugacy data over an enumerated group: for every element its class,
/// and a conjugator carrying the class representative onto it.
pub struct Conjugacy {
    elements: ElementList,
    /// Element index of each class representative (the least element of its class).
    reps: Vec<usize>,
    sizes: Vec<usize>,
    class_of: Vec<u32>,
    /// `conjugator[y] = t` with `y = rep^t`.
    conjugator: Vec<u32>,
    orders: Vec<u128>,
}

impl Conjugacy {
    pub fn new(group: &PermGroup, budget: &Budget) -> Result<Self> {
        let elements = group.elements(budget)?;
        Ok(Self::from_elements(group, elements))
    }

    pub fn from_elements(group: &PermGroup, elements: ElementList) -> Self {
        let n = elements.len();
        let gens: Vec<usize> = group
            .nontrivial_generators()
            .map(|g| elements.index_of(g.images()).expect("generator in group"))
            .collect();
        let mut class_of = vec![u32::MAX; n];
        let mut conjugator = vec![0u32; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut buf = Vec::with_capacity(elements.degree());
        let mut stack = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cls = reps.len() as u32;
            reps.push(start);
            class_of[start] = cls;
            conjugator[start] = 0;
            let mut size = 1;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = elements.conjugate_index(x, s, &mut buf);
                    if class_of[y] == u32::MAX {
                        class_of[y] = cls;
                        conjugator[y] =
                            elements.product_index(conjugator[x] as usize, s, &mut buf) as u32;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        let orders = reps.iter().map(|&r| elements.perm(r).order()).collect();
        Conjugacy {
            elements,
            reps,
            sizes,
            class_of,
            conjugator,
            orders,
        }
    }

    pub fn elements(&self) -> &ElementList {
        &self.elements
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn rep_index(&self, class: usize) -> usize {
        self.reps[class]
    }

    pub fn rep_indices(&self) -> &[usize] {
        &self.reps
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.sizes[class]
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    pub fn conjugator_of(&self, element: usize) -> usize {
        self.conjugator[element] as usize
    }

    /// Element order of the representative of `class`.
    pub fn rep_order(&self, class: usize) -> u128 {
        self.orders[class]
    }

    /// Indices of all elements in `class`.
    pub fn class_members(&self, class: usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.class_of[i] as usize == class)
            .collect()
    }

    pub fn class_reps(&self) -> ClassReps {
        ClassReps {
            reps: self.reps.iter().map(|&i| self.elements.perm(i)).collect(),
            class_sizes: self.sizes.clone(),
        }
    }
}

/// One representative per conjugacy class (the lexicographically least
/// element of each class), in increasing order, with class sizes.
pub fn conjugacy_class_reps(group: &PermGroup, budget: &Budget) -> Result<ClassReps> {
    Ok(Conjugacy::new(group, budget)?.class_reps())
}
