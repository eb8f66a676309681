use serde::Serialize;

use crate::config::DEGREE_CEILING;
use crate::error::{Error, Result};
use crate::permcore::{PermGroup, Permutation};

/// A generator file: `degree N` on the first line, then one generator per
/// non-empty line in 1-based disjoint-cycle notation, `#` starting a comment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorFile {
    pub degree: usize,
    /// One entry per generator, normalized to 1-based cycle strings.
    pub generators: Vec<String>,
    pub label: String,
}

impl GeneratorFile {
    pub fn parse(text: &str, label: &str) -> Result<Self> {
        let (degree, perms) = parse_with_degree(text)?;
        Ok(GeneratorFile {
            degree,
            generators: perms.iter().map(|p| p.to_cycle_string(1, ",")).collect(),
            label: label.to_string(),
        })
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| parse_cycles(g, self.degree, 1))
            .collect()
    }

    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::with_degree(self.degree, self.permutations()?)
    }

    pub fn from_group(group: &PermGroup, label: &str) -> Self {
        GeneratorFile {
            degree: group.degree(),
            generators: group
                .generators()
                .iter()
                .map(|p| p.to_cycle_string(1, ","))
                .collect(),
            label: label.to_string(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        if !self.label.is_empty() {
            s.push_str(&format!("# {}\n", self.label));
        }
        s.push_str(&format!("degree {}\n", self.degree));
        for g in &self.generators {
            s.push_str(g);
            s.push('\n');
        }
        s
    }
}

/// Parses a generator file into its permutations.
pub fn parse_generators(text: &str) -> Result<Vec<Permutation>> {
    parse_with_degree(text).map(|(_, p)| p)
}

/// Renders permutations of the given degree in the generator file format.
pub fn render_generators(degree: usize, generators: &[Permutation]) -> String {
    let mut s = format!("degree {degree}\n");
    for g in generators {
        s.push_str(&g.to_cycle_string(1, ","));
        s.push('\n');
    }
    s
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

pub(crate) fn parse_with_degree(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree = None;
    let mut perms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        match degree {
            None => degree = Some(parse_degree(line, line_no)?),
            Some(n) => perms.push(parse_line(line, n, line_no)?),
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `degree N` header".into(),
    })?;
    Ok((degree, perms))
}

fn parse_degree(line: &str, line_no: usize) -> Result<usize> {
    let err = |column: usize, message: String| Error::Parse {
        line: line_no,
        column,
        message,
    };
    let body = line.trim_start();
    let offset = line.len() - body.len();
    let rest = body
        .strip_prefix("degree")
        .ok_or_else(|| err(offset + 1, "expected `degree N`".into()))?;
    let value = rest.trim();
    let col = offset + "degree".len() + rest.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
    let n: usize = value
        .parse()
        .map_err(|_| err(col, format!("invalid degree {value:?}")))?;
    if n == 0 || n > DEGREE_CEILING {
        return Err(err(
            col,
            format!("degree {n} out of range 1..={DEGREE_CEILING}"),
        ));
    }
    Ok(n)
}

/// Parses one cycle-product line with 1-based points.
fn parse_line(line: &str, degree: usize, line_no: usize) -> Result<Permutation> {
    let err = |column: usize, message: String| Error::Parse {
        line: line_no,
        column,
        message,
    };
    let bytes = line.as_bytes();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; degree];
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i] as char).is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(err(
                i + 1,
                format!("expected '(' but found {:?}", bytes[i] as char),
            ));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            if i >= bytes.len() {
                return Err(err(i + 1, "unterminated cycle".into()));
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            if !cycle.is_empty() {
                if bytes[i] != b',' {
                    return Err(err(
                        i + 1,
                        format!("expected ',' or ')' but found {:?}", bytes[i] as char),
                    ));
                }
                i += 1;
                skip_ws(&mut i);
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                let found = bytes
                    .get(i)
                    .map(|&b| format!("{:?}", b as char))
                    .unwrap_or_else(|| "end of line".into());
                return Err(err(
                    start + 1,
                    format!("expected a point but found {found}"),
                ));
            }
            let point: usize = line[start..i]
                .parse()
                .map_err(|_| err(start + 1, "point too large".into()))?;
            if point == 0 || point > degree {
                return Err(err(
                    start + 1,
                    format!("point {point} out of range 1..={degree}"),
                ));
            }
            if seen[point - 1] {
                return Err(err(start + 1, format!("point {point} repeated")));
            }
            seen[point - 1] = true;
            cycle.push(point - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| err(1, e.to_string()))
}

/// Parses a single cycle string (no degree header) with the given point offset.
pub fn parse_cycles(s: &str, degree: usize, offset: usize) -> Result<Permutation> {
    if offset == 1 {
        return parse_line(s, degree, 1);
    }
    let shifted: String = shift_points(s, offset);
    parse_line(&shifted, degree, 1)
}

fn shift_points(s: &str, offset: usize) -> String {
    let mut out = String::new();
    let mut num = String::new();
    let flush = |num: &mut String, out: &mut String| {
        if !num.is_empty() {
            let v: usize = num.parse().unwrap_or(usize::MAX - 1);
            out.push_str(&(v + 1 - offset).to_string());
            num.clear();
        }
    };
    for c in s.chars() {
        if c.is_ascii_digit() {
            num.push(c);
        } else {
            flush(&mut num, &mut out);
            out.push(c);
        }
    }
    flush(&mut num, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a5() {
        let gens = parse_generators("degree 5\n(1,2,3,4,5)\n(1,2,3)").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(PermGroup::new(gens).unwrap().order_u64(), Some(60));
    }

    #[test]
    fn identity_and_comments() {
        let gens = parse_generators("# trivial\ndegree 3\n()  # identity\n\n").unwrap();
        assert_eq!(gens, vec![Permutation::identity(3)]);
        let gens = parse_generators("degree 4\n( 1 , 2 )(3,4)\n").unwrap();
        assert_eq!(gens[0].to_cycle_string(1, ","), "(1,2)(3,4)");
    }

    #[test]
    fn errors_carry_position() {
        match parse_generators("degree 4\n(1,5)") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        match parse_generators("degree 4\n(1,2)(2,3)") {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => {
                assert_eq!((line, column), (2, 7));
                assert!(message.contains("repeated"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_generators("(1,2)"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_generators("degree 3\n(1,2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_generators("degree 3\n1,2"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_generators("degree x"),
            Err(Error::Parse {
                line: 1,
                column: 8,
                ..
            })
        ));
        assert!(parse_generators("").is_err());
    }

    #[test]
    fn round_trip() {
        let text = "degree 6\n(1,2,3)(4,5)\n(1,6)\n()\n";
        let gens = parse_generators(text).unwrap();
        assert_eq!(render_generators(6, &gens), text);
        let file = GeneratorFile::parse(text, "sample").unwrap();
        assert_eq!(
            GeneratorFile::parse(&file.render(), "sample").unwrap(),
            file
        );
        assert_eq!(
            parse_cycles("(0,1,2)", 4, 0).unwrap(),
            parse_cycles("(1,2,3)", 4, 1).unwrap()
        );
    }
}
