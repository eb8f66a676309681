use rand::Rng;

use crate::permcore::{PermGroup, Permutation};

/// `C_k ≀ T` in its imprimitive action on `k · m` points, `T` acting on
/// `m` blocks of size `k`. Point `(i, b)` is `b·k + i`.
pub fn cyclic_wreath(k: usize, top: &PermGroup) -> PermGroup {
    let m = top.degree();
    let degree = k * m;
    let mut gens = Vec::new();
    if k > 1 {
        let base = Permutation::from_cycles(degree, &[(0..k).collect()]).expect("valid cycle");
        gens.push(base);
    }
    for t in top.nontrivial_generators() {
        let images = (0..degree).map(|x| t.image(x / k) * k + x % k);
        gens.push(Permutation::from_images(images).expect("block permutation"));
    }
    PermGroup::with_degree(degree, gens).expect("degree within ceiling")
}

/// Iterated wreath product `C_{k₁} ≀ C_{k₂} ≀ … ≀ C_{k_r}`, soluble.
pub fn cyclic_tower(ks: &[usize]) -> PermGroup {
    let mut g = PermGroup::trivial(1);
    for &k in ks.iter().rev() {
        g = cyclic_wreath(k, &g);
    }
    g
}

/// A random soluble group of degree at most `max_degree`: a direct product
/// of cyclic towers, cut down to the subgroup generated by a few random
/// elements (sometimes the whole product).
pub fn random_soluble_group<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> PermGroup {
    let max_degree = max_degree.max(2);
    let mut towers: Vec<PermGroup> = Vec::new();
    let mut used = 0;
    while used < max_degree && (towers.is_empty() || rng.random_bool(0.6)) {
        let room = max_degree - used;
        let mut ks = Vec::new();
        let mut size = 1;
        loop {
            let options: Vec<usize> = (2..=room / size).collect();
            if options.is_empty() || (!ks.is_empty() && rng.random_bool(0.5)) {
                break;
            }
            let k = options[rng.random_range(0..options.len())];
            ks.push(k);
            size *= k;
        }
        if ks.is_empty() {
            break;
        }
        used += size;
        towers.push(cyclic_tower(&ks));
    }
    let product = towers
        .iter()
        .skip(1)
        .fold(towers[0].clone(), |acc, t| super::direct_product(&acc, t));
    if rng.random_bool(0.3) {
        return product;
    }
    let n = rng.random_range(1..=3);
    let gens = (0..n).map(|_| product.random_element(rng)).collect();
    PermGroup::with_degree(product.degree(), gens).expect("same degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::is_soluble;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn wreath_orders() {
        // |C_a ≀ C_b| = a^b · b
        assert_eq!(cyclic_tower(&[3, 2]).order_u64(), Some(18));
        assert_eq!(cyclic_tower(&[2, 2, 2]).order_u64(), Some(128));
        assert_eq!(cyclic_tower(&[2, 3]).degree(), 6);
        assert_eq!(cyclic_tower(&[5]).order_u64(), Some(5));
    }

    #[test]
    fn random_groups_are_soluble_and_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let g = random_soluble_group(&mut rng, 30);
            assert!(g.degree() <= 30);
            assert!(is_soluble(&g));
        }
    }
}
