use crate::error::{Error, Result};
use crate::liearith::arith::prime_power;

/// Irreducible polynomials used to build `GF(p^e)`, as coefficient lists
/// from the constant term up (monic, leading coefficient omitted).
///
/// | q | polynomial |
/// |---|---|
/// | 4 | x² + x + 1 |
/// | 8 | x³ + x + 1 |
/// | 9 | x² + 1 |
/// | 16 | x⁴ + x + 1 |
/// | 25 | x² + x + 2 |
/// | 27 | x³ + 2x + 1 |
/// | 32 | x⁵ + x² + 1 |
pub const IRREDUCIBLES: &[(u64, &[u64])] = &[
    (4, &[1, 1]),
    (8, &[1, 1, 0]),
    (9, &[1, 0]),
    (16, &[1, 1, 0, 0]),
    (25, &[2, 1]),
    (27, &[1, 2, 0]),
    (32, &[1, 0, 1, 0, 0]),
];

/// A small finite field with elements `0..q`, an element being the base-`p`
/// digit vector of its polynomial coefficients (lowest degree first).
/// Addition and multiplication are tabulated.
#[derive(Debug, Clone)]
pub struct FiniteField {
    pub q: usize,
    pub p: usize,
    pub e: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        if q > 1024 {
            return Err(Error::InvalidParameters(format!(
                "field size {q} too large for tables"
            )));
        }
        let (q, p, e) = (q as usize, p as usize, e as usize);
        let modulus: Vec<usize> = if e == 1 {
            Vec::new()
        } else {
            let (_, poly) = IRREDUCIBLES
                .iter()
                .find(|(qq, _)| *qq as usize == q)
                .ok_or_else(|| {
                    Error::InvalidParameters(format!(
                        "no irreducible polynomial recorded for q = {q}"
                    ))
                })?;
            poly.iter().map(|&c| c as usize).collect()
        };
        let digits =
            |x: usize| -> Vec<usize> { (0..e).map(|i| (x / p.pow(i as u32)) % p).collect() };
        let value = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = value(&sum) as u16;
                let mut prod = vec![0usize; 2 * e.max(1)];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // Reduce with x^e = −(modulus).
                for deg in (e..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (k, m) in modulus.iter().enumerate() {
                        let t = deg - e + k;
                        prod[t] = (prod[t] + (p - (c * m) % p)) % p;
                    }
                }
                mul[a * q + b] = value(&prod[..e]) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        let mut inv = vec![0u16; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).ok_or_else(|| {
                Error::InvalidParameters(format!("modulus for q = {q} is reducible"))
            })? as u16;
        }
        let mut field = FiniteField {
            q,
            p,
            e,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        field.primitive = (1..q as u16)
            .find(|&g| field.mult_order(g) == q - 1)
            .ok_or_else(|| Error::InvalidParameters(format!("no primitive element in GF({q})")))?;
        Ok(field)
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }
    /// Multiplicative inverse; `0` maps to `0`.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }
    pub fn one(&self) -> u16 {
        1
    }
    /// Generator of the multiplicative group (least by encoding).
    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    fn mult_order(&self, g: u16) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }
}
