use crate::config::Budget;
use crate::error::{Error, Result};
use crate::permcore::{PermGroup, Permutation};

use super::fields::FiniteField;
use super::parse::parse_with_degree;

/// Field sizes for which `psl2_q` and `pgl2_q` are available.
pub const PSL2_FIELDS: [u64; 16] = [4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];

/// Named subgroup fixtures: name, degree, 1-based generators.
const FIXTURES: &[(&str, usize, &[&str])] = &[
    ("A4_in_A5", 5, &["(1,2,3)", "(2,3,4)"]),
    ("C5_in_A5", 5, &["(1,2,3,4,5)"]),
    ("S3_in_S3xC5", 8, &["(1,2)", "(1,2,3)"]),
    ("C5_in_S3xC5", 8, &["(4,5,6,7,8)"]),
    ("A4_in_S4", 4, &["(1,2,3)", "(2,3,4)"]),
    ("C2_in_S4", 4, &["(1,2)"]),
    ("D8_in_S4", 4, &["(1,2,3,4)", "(1,3)"]),
    ("S4_in_S4xA5", 9, &["(1,2)", "(1,2,3,4)"]),
    ("A5_in_S4xA5", 9, &["(5,6,7,8,9)", "(5,6,7)"]),
    ("C5_in_S4xA5", 9, &["(5,6,7,8,9)"]),
    ("S4_in_S4xC5", 9, &["(1,2)", "(1,2,3,4)"]),
    ("C5_in_S4xC5", 9, &["(5,6,7,8,9)"]),
    ("A5_in_S5", 5, &["(1,2,3,4,5)", "(1,2,3)"]),
    ("S4_in_S5", 5, &["(1,2)", "(1,2,3,4)"]),
    ("C5_in_S5", 5, &["(1,2,3,4,5)"]),
];

/// Every fixed name accepted by [`builtin`] besides the parametrized
/// families `A{n}`, `S{n}`, `C{n}`, `D{2n}`, `psl2_{q}`, `pgl2_{q}` and
/// products `XxY`.
pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _, _)| *n).collect()
}

/// Looks up a group by name: `A5`, `S4`, `C6`, `D10`, `psl2_16`,
/// `pgl2_7`, a fixture such as `A4_in_A5`, or a product like `S4xA5`.
pub fn builtin(name: &str) -> Result<PermGroup> {
    builtin_with(name, &Budget::default())
}

pub fn builtin_with(name: &str, budget: &Budget) -> Result<PermGroup> {
    let g = lookup(name)?;
    if g.degree() > budget.max_degree {
        return Err(Error::budget("degree", g.degree(), budget.max_degree));
    }
    Ok(g)
}

fn lookup(name: &str) -> Result<PermGroup> {
    if let Some((_, degree, gens)) = FIXTURES.iter().find(|(n, _, _)| *n == name) {
        let text = format!("degree {degree}\n{}", gens.join("\n"));
        let (d, perms) = parse_with_degree(&text)?;
        return PermGroup::with_degree(d, perms);
    }
    if let Some(q) = name
        .strip_prefix("psl2_")
        .or_else(|| name.strip_prefix("L2_"))
    {
        return psl2(parse_param(name, q)?);
    }
    if let Some(q) = name.strip_prefix("pgl2_") {
        return pgl2(parse_param(name, q)?);
    }
    if name.contains('x') {
        let mut parts = name.split('x');
        let first = lookup(parts.next().unwrap())?;
        return parts.try_fold(first, |acc, part| Ok(direct_product(&acc, &lookup(part)?)));
    }
    let unknown = || Error::UnknownGroup(name.to_string());
    let (kind, rest) = name.split_at(
        name.char_indices()
            .nth(1)
            .map(|(i, _)| i)
            .ok_or_else(unknown)?,
    );
    let n: usize = rest.parse().map_err(|_| unknown())?;
    match kind {
        "A" => alternating(n),
        "S" => symmetric(n),
        "C" => cyclic(n),
        "D" => dihedral(n),
        _ => Err(unknown()),
    }
}

fn parse_param(name: &str, s: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::UnknownGroup(name.to_string()))
}

fn cycle(degree: usize, pts: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(degree, &[pts.into_iter().collect()]).expect("valid cycle")
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if !(1..=12).contains(&n) {
        return Err(Error::UnknownGroup(format!("S{n}: degree must be 1..=12")));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    PermGroup::new(vec![cycle(n, [0, 1]), cycle(n, 0..n)])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if !(1..=12).contains(&n) {
        return Err(Error::UnknownGroup(format!("A{n}: degree must be 1..=12")));
    }
    if n < 3 {
        return Ok(PermGroup::trivial(n));
    }
    // 3-cycles (0 1 k) generate A_n.
    PermGroup::new((2..n).map(|k| cycle(n, [0, 1, k])).collect())
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 || n > crate::config::DEGREE_CEILING {
        return Err(Error::UnknownGroup(format!("C{n}")));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    PermGroup::new(vec![cycle(n, 0..n)])
}

/// Dihedral group of order `order` acting on `order / 2` points.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    if order < 6 || order % 2 == 1 || order / 2 > crate::config::DEGREE_CEILING {
        return Err(Error::UnknownGroup(format!(
            "D{order}: order must be even and at least 6"
        )));
    }
    let n = order / 2;
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    PermGroup::new(vec![cycle(n, 0..n), Permutation::from_images(reflection)?])
}

/// `G × H` acting on the disjoint union, `G` on the first points.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let degree = g.degree() + h.degree();
    let mut gens: Vec<Permutation> = g.generators().iter().map(|x| x.embed(degree, 0)).collect();
    gens.extend(h.generators().iter().map(|x| x.embed(degree, g.degree())));
    PermGroup::with_degree(degree, gens).expect("degree within ceiling for library groups")
}

fn projective_line_group(q: u64, full: bool) -> Result<PermGroup> {
    if !PSL2_FIELDS.contains(&q) {
        return Err(Error::UnknownGroup(format!(
            "q = {q} unsupported for the projective line"
        )));
    }
    let f = FiniteField::new(q)?;
    let inf = q as u16;
    let map = |m: &dyn Fn(u16) -> u16| -> Result<Permutation> {
        Permutation::from_images((0..=inf).map(|x| m(x) as usize))
    };
    let w = f.primitive();
    let scale = if full { w } else { f.mul(w, w) };
    let translate = map(&|x| if x == inf { inf } else { f.add(x, 1) })?;
    let multiply = map(&|x| if x == inf { inf } else { f.mul(scale, x) })?;
    let invert = map(&|x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            f.neg(f.inv(x))
        }
    })?;
    PermGroup::new(vec![translate, multiply, invert])
}

/// `PSL₂(q)` on the `q + 1` points of the projective line, generated by
/// `x ↦ x + 1`, `x ↦ ω²x` and `x ↦ −1/x` (`ω` primitive).
pub fn psl2(q: u64) -> Result<PermGroup> {
    projective_line_group(q, false)
}

/// `PGL₂(q)` on the projective line: as [`psl2`] with `x ↦ ωx`.
pub fn pgl2(q: u64) -> Result<PermGroup> {
    projective_line_group(q, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(name: &str) -> u64 {
        builtin(name).unwrap().order_u64().unwrap()
    }

    #[test]
    fn library_orders() {
        assert_eq!(order("A5"), 60);
        assert_eq!(order("S4"), 24);
        assert_eq!(order("C1"), 1);
        assert_eq!(order("C6"), 6);
        assert_eq!(order("D10"), 10);
        assert_eq!(order("A12"), 239500800);
        assert_eq!(order("S4xA5"), 1440);
        assert_eq!(builtin("S4xA5").unwrap().degree(), 9);
        assert_eq!(order("S3xC5"), 30);
        assert_eq!(builtin("S3xC5").unwrap().degree(), 8);
        assert_eq!(order("A4_in_A5"), 12);
        assert_eq!(order("pgl2_7"), 336);
        assert_eq!(builtin("psl2_16").unwrap().degree(), 17);
    }

    #[test]
    fn psl2_orders_match_formula() {
        for q in PSL2_FIELDS {
            let d = if q % 2 == 1 { 2 } else { 1 };
            assert_eq!(
                psl2(q).unwrap().order_u64(),
                Some(q * (q * q - 1) / d),
                "q={q}"
            );
            assert_eq!(pgl2(q).unwrap().order_u64(), Some(q * (q * q - 1)), "q={q}");
        }
    }

    #[test]
    fn unknown_names() {
        for bad in ["A13", "Q8", "psl2_6", "psl2_49", "", "D5", "Sx"] {
            assert!(builtin(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fixtures_are_subgroups() {
        let pairs = [
            ("A4_in_A5", "A5"),
            ("C5_in_A5", "A5"),
            ("S3_in_S3xC5", "S3xC5"),
            ("C5_in_S3xC5", "S3xC5"),
            ("A4_in_S4", "S4"),
            ("C2_in_S4", "S4"),
            ("D8_in_S4", "S4"),
            ("S4_in_S4xA5", "S4xA5"),
            ("A5_in_S4xA5", "S4xA5"),
            ("C5_in_S4xA5", "S4xA5"),
            ("S4_in_S4xC5", "S4xC5"),
            ("C5_in_S4xC5", "S4xC5"),
            ("A5_in_S5", "S5"),
            ("S4_in_S5", "S5"),
            ("C5_in_S5", "S5"),
        ];
        assert_eq!(pairs.len(), fixture_names().len());
        for (sub, whole) in pairs {
            assert!(
                builtin(sub)
                    .unwrap()
                    .is_subgroup_of(&builtin(whole).unwrap()),
                "{sub}"
            );
        }
    }
}
