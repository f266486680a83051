//! Plain-text permutation generator listing.
//!
//! ```text
//! degree 4
//! a = (1,2)
//! b = (2,3)
//! d = ()
//! ```
//!
//! Points are 1-based. Generator names are optional (`(1,2)` alone is fine).
//! `#` starts a comment.

use super::{Perm, PermError};

/// Parses the listing into the degree and the named generators.
pub fn parse_perm_generators(text: &str) -> Result<(usize, Vec<(String, Perm)>), PermError> {
    let err = |line: usize, msg: String| PermError::Parse { line, msg };
    let mut degree = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(d) = line.strip_prefix("degree") {
            degree = Some(d.trim().parse::<usize>().map_err(|_| err(ln, "expected `degree N`".into()))?);
            continue;
        }
        let n = degree.ok_or_else(|| err(ln, "`degree` must come first".into()))?;
        let (name, body) = match line.split_once('=') {
            Some((name, body)) => (name.trim().to_string(), body.trim()),
            None => (format!("g{}", gens.len() + 1), line),
        };
        let mut cycles = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let r = rest.strip_prefix('(').ok_or_else(|| err(ln, format!("unexpected `{rest}`")))?;
            let (inner, r) = r.split_once(')').ok_or_else(|| err(ln, "unclosed `(`".into()))?;
            if !inner.trim().is_empty() {
                let c = inner
                    .split(',')
                    .map(|x| match x.trim().parse::<usize>() {
                        Ok(p) if p >= 1 => Ok(p - 1),
                        _ => Err(err(ln, format!("bad point `{}`", x.trim()))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(c);
            }
            rest = r.trim_start();
        }
        gens.push((name, Perm::from_cycles(n, &cycles)?));
    }
    let degree = degree.ok_or_else(|| err(1, "missing `degree`".into()))?;
    Ok((degree, gens))
}

/// Inverse of [`parse_perm_generators`] with 1-based cycles.
pub fn format_perm_generators(degree: usize, gens: &[(String, Perm)]) -> String {
    let mut out = format!("degree {degree}\n");
    for (name, p) in gens {
        let cycles = p.cycles();
        let body: String = if cycles.is_empty() {
            "()".into()
        } else {
            cycles
                .iter()
                .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
                .collect()
        };
        out.push_str(&format!("{name} = {body}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "degree 5\n# comment\na = (1,2)(3,5,4)\nb = ()\n(2,3)\n";
        let (n, gens) = parse_perm_generators(text).unwrap();
        assert_eq!(n, 5);
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0].1.image(2), 4);
        assert!(gens[1].1.is_identity());
        assert_eq!(gens[2].0, "g3");
        assert_eq!(parse_perm_generators(&format_perm_generators(n, &gens)).unwrap(), (n, gens));
    }

    #[test]
    fn bad_input() {
        assert!(matches!(parse_perm_generators("(1,2)\n"), Err(PermError::Parse { line: 1, .. })));
        assert!(matches!(parse_perm_generators("degree 3\n(1,4)\n"), Err(PermError::PointOutOfRange { .. })));
        assert!(matches!(parse_perm_generators("degree 3\n(0,1)\n"), Err(PermError::Parse { .. })));
        assert!(matches!(parse_perm_generators("degree 3\n(1,2\n"), Err(PermError::Parse { .. })));
    }
}
