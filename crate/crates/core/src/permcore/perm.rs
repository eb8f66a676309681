use std::fmt;

use num_integer::Integer;

use crate::config::DEGREE_CEILING;
use crate::error::{Error, Result};

/// A point of the permuted set `{0, …, degree − 1}`.
pub type Point = u16;

/// A bijection of `{0, …, degree − 1}`, stored as its image sequence.
///
/// Composition is left to right: `p.compose(q)` applies `p` first, so the
/// image of `x` is `q(p(x))`. Conjugation follows the same convention,
/// `x^g = g⁻¹ x g`. The derived ordering is lexicographic on image sequences,
/// which is the canonical enumeration order everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= DEGREE_CEILING, "degree {degree} above ceiling");
        Permutation {
            images: (0..degree).map(|i| i as Point).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images<I: IntoIterator<Item = usize>>(images: I) -> Result<Self> {
        let images: Vec<usize> = images.into_iter().collect();
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if n > DEGREE_CEILING {
            return Err(Error::InvalidPermutation(format!(
                "degree {n} above ceiling {DEGREE_CEILING}"
            )));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as Point).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 || degree > DEGREE_CEILING {
            return Err(Error::InvalidPermutation(format!("bad degree {degree}")));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range for degree {degree}"
                    )));
                }
                if used[x] {
                    return Err(Error::InvalidPermutation(format!("point {x} repeated")));
                }
                used[x] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as Point).collect(),
        })
    }

    /// Trusted constructor for image slices produced internally.
    pub(crate) fn from_slice_unchecked(images: &[Point]) -> Self {
        Permutation {
            images: images.into(),
        }
    }

    pub(crate) fn from_vec_unchecked(images: Vec<Point>) -> Self {
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    #[inline]
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    /// Non-trivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image(x);
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Least `k ≥ 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_type()
            .into_iter()
            .fold(1u128, |acc, len| acc.lcm(&(len as u128)))
    }

    /// True when the order is a power of `p` (the identity counts, as `p⁰`).
    pub fn is_p_element(&self, p: u64) -> bool {
        let mut o = self.order();
        while o.is_multiple_of(p as u128) {
            o /= p as u128;
        }
        o == 1
    }

    /// Cycle notation with the given point offset (0 for internal, 1 for files)
    /// and separator; the identity renders as `()`.
    pub fn to_cycle_string(&self, offset: usize, sep: &str) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + offset).to_string()).collect();
            s.push_str(&parts.join(sep));
            s.push(')');
        }
        s
    }

    /// Extends to a larger degree by fixing the new points, or shifts the
    /// support by `offset`.
    pub fn embed(&self, degree: usize, offset: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<Point> = (0..degree as Point).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as Point;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string(0, " "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}
