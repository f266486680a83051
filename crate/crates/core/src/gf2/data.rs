//! Parser for the plain-text generator listing.
//!
//! ```text
//! dim N                        # dimension of the generators
//! matrix NAME K                # K rows of K entries 0/1, then `end`
//! gen NAME = kron IK NAME      # Kronecker product with an identity
//! gen NAME = perm ITEMS        # permutation matrix, 1-based cycles
//! gen NAME = block R K         # R rows of R block entries, then `end`
//! ```
//!
//! Permutation items are cycles such as `(3,6)` or products
//! `prod i in {0,8,16} (i+3,i+8)` and `prod i in 9..16 (i,i+8)`; a `prod`
//! applies to every cycle after it on the line. Block entries are `0`, a
//! matrix name, or a sum of terms `IK`, `E(i,j)` and names. Cycles in one
//! `gen` line must be disjoint. `#` starts a comment.

use std::collections::HashMap;

use super::{Gf2Error, Gf2Matrix};
use crate::permgroup::Perm;

fn err(line: usize, msg: impl Into<String>) -> Gf2Error {
    Gf2Error::Parse { line, msg: msg.into() }
}

/// Parses the listing; returns the `gen` matrices in file order.
pub fn parse_generators(text: &str) -> Result<Vec<(String, Gf2Matrix)>, Gf2Error> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut dim: Option<usize> = None;
    let mut named: HashMap<String, Gf2Matrix> = HashMap::new();
    let mut gens = Vec::new();
    let mut k = 0;
    while k < lines.len() {
        let (ln, line) = lines[k];
        k += 1;
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "dim" => {
                let n = words.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| err(ln, "expected `dim N`"))?;
                dim = Some(n);
            }
            "matrix" => {
                let (name, size) = match words[..] {
                    [_, name, size] => (name, size.parse::<usize>().map_err(|_| err(ln, "bad matrix size"))?),
                    _ => return Err(err(ln, "expected `matrix NAME K`")),
                };
                let mut rows = Vec::with_capacity(size);
                for _ in 0..size {
                    let (rl, row) = *lines.get(k).ok_or_else(|| err(ln, "matrix ends early"))?;
                    k += 1;
                    let r: Vec<u8> = row
                        .split_whitespace()
                        .map(|x| match x {
                            "0" => Ok(0),
                            "1" => Ok(1),
                            _ => Err(err(rl, format!("matrix entry `{x}`"))),
                        })
                        .collect::<Result<_, _>>()?;
                    if r.len() != size {
                        return Err(err(rl, format!("row has {} entries, expected {size}", r.len())));
                    }
                    rows.push(r);
                }
                expect_end(&lines, &mut k, ln)?;
                named.insert(name.to_string(), Gf2Matrix::from_rows(&rows)?);
            }
            "gen" => {
                let n = dim.ok_or_else(|| err(ln, "`dim` must come first"))?;
                if words.len() < 4 || words[2] != "=" {
                    return Err(err(ln, "expected `gen NAME = ...`"));
                }
                let name = words[1].to_string();
                let m = match words[3] {
                    "kron" => {
                        let [i, x] = words[4..] else { return Err(err(ln, "expected `kron IK NAME`")) };
                        let left = term(i, &named, None, ln)?;
                        let right = lookup(x, &named, ln)?;
                        Gf2Matrix::kron(&left, right)?
                    }
                    "perm" => {
                        let rest = line.split_once("perm").map(|(_, r)| r).unwrap_or("");
                        Gf2Matrix::from_perm(&parse_perm(rest, n, ln)?)?
                    }
                    "block" => {
                        let (r, size) = match words[4..] {
                            [r, s] => (
                                r.parse::<usize>().map_err(|_| err(ln, "bad block count"))?,
                                s.parse::<usize>().map_err(|_| err(ln, "bad block size"))?,
                            ),
                            _ => return Err(err(ln, "expected `block R K`")),
                        };
                        let mut grid = Vec::with_capacity(r);
                        for _ in 0..r {
                            let (rl, row) = *lines.get(k).ok_or_else(|| err(ln, "block ends early"))?;
                            k += 1;
                            let cells: Vec<Option<Gf2Matrix>> = row
                                .split_whitespace()
                                .map(|c| if c == "0" { Ok(None) } else { block_entry(c, &named, size, rl).map(Some) })
                                .collect::<Result<_, _>>()?;
                            if cells.len() != r {
                                return Err(err(rl, format!("block row has {} entries, expected {r}", cells.len())));
                            }
                            grid.push(cells);
                        }
                        expect_end(&lines, &mut k, ln)?;
                        Gf2Matrix::block(&grid, size)?
                    }
                    other => return Err(err(ln, format!("unknown generator form `{other}`"))),
                };
                if m.dim() != n {
                    return Err(err(ln, format!("`{name}` has dimension {}, expected {n}", m.dim())));
                }
                gens.push((name, m));
            }
            other => return Err(err(ln, format!("unknown directive `{other}`"))),
        }
    }
    Ok(gens)
}

fn expect_end(lines: &[(usize, &str)], k: &mut usize, start: usize) -> Result<(), Gf2Error> {
    match lines.get(*k) {
        Some((_, "end")) => {
            *k += 1;
            Ok(())
        }
        Some((l, other)) => Err(err(*l, format!("expected `end`, found `{other}`"))),
        None => Err(err(start, "missing `end`")),
    }
}

fn lookup<'a>(name: &str, named: &'a HashMap<String, Gf2Matrix>, ln: usize) -> Result<&'a Gf2Matrix, Gf2Error> {
    named.get(name).ok_or_else(|| err(ln, format!("unknown matrix `{name}`")))
}

/// A single term: `IK`, `E(i,j)` (needs a size) or a matrix name.
fn term(t: &str, named: &HashMap<String, Gf2Matrix>, size: Option<usize>, ln: usize) -> Result<Gf2Matrix, Gf2Error> {
    if let Some(inner) = t.strip_prefix("E(").and_then(|r| r.strip_suffix(')')) {
        let size = size.ok_or_else(|| err(ln, "E(i,j) needs a block size"))?;
        let (i, j) = inner.split_once(',').ok_or_else(|| err(ln, "expected E(i,j)"))?;
        let i: usize = i.trim().parse().map_err(|_| err(ln, "bad E index"))?;
        let j: usize = j.trim().parse().map_err(|_| err(ln, "bad E index"))?;
        if i == 0 || j == 0 {
            return Err(err(ln, "E indices are 1-based"));
        }
        return Gf2Matrix::unit(i - 1, j - 1, size);
    }
    if let Some(k) = t.strip_prefix('I').and_then(|r| r.parse::<usize>().ok()) {
        return Gf2Matrix::identity(k);
    }
    lookup(t, named, ln).cloned()
}

fn block_entry(c: &str, named: &HashMap<String, Gf2Matrix>, size: usize, ln: usize) -> Result<Gf2Matrix, Gf2Error> {
    let mut acc = Gf2Matrix::zero(size)?;
    for t in c.split('+') {
        let m = term(t, named, Some(size), ln)?;
        acc = acc.add(&m).map_err(|_| err(ln, format!("term `{t}` is not {size}×{size}")))?;
    }
    Ok(acc)
}

/// Cycle expression with at most one bound variable.
fn parse_perm(s: &str, n: usize, ln: usize) -> Result<Perm, Gf2Error> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut values: Vec<i64> = vec![0];
    let mut var: Option<String> = None;
    let mut rest = s.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("prod") {
            let r = r.trim_start();
            let (v, r) = r.split_once(char::is_whitespace).ok_or_else(|| err(ln, "expected `prod VAR in SET`"))?;
            let r = r.trim_start().strip_prefix("in").ok_or_else(|| err(ln, "expected `in`"))?.trim_start();
            let (set, r) = if let Some(r) = r.strip_prefix('{') {
                let (inner, r) = r.split_once('}').ok_or_else(|| err(ln, "unclosed `{`"))?;
                let vals = inner
                    .split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| err(ln, format!("bad set element `{x}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                (vals, r)
            } else {
                let (range, r) = r.split_once(char::is_whitespace).unwrap_or((r, ""));
                let (a, b) = range.split_once("..").ok_or_else(|| err(ln, "expected `a..b` or `{...}`"))?;
                let a: i64 = a.parse().map_err(|_| err(ln, "bad range start"))?;
                let b: i64 = b.parse().map_err(|_| err(ln, "bad range end"))?;
                ((a..=b).collect(), r)
            };
            var = Some(v.to_string());
            values = set;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('(') {
            let (inner, r) = r.split_once(')').ok_or_else(|| err(ln, "unclosed `(`"))?;
            for &x in &values {
                let c = inner
                    .split(',')
                    .map(|e| eval(e.trim(), var.as_deref(), x, n, ln))
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(c);
            }
            rest = r.trim_start();
        } else {
            return Err(err(ln, format!("unexpected `{rest}`")));
        }
    }
    Perm::from_cycles(n, &cycles).map_err(|e| err(ln, e.to_string()))
}

/// Evaluates `k`, `VAR` or `VAR+k` and converts to a 0-based point.
fn eval(e: &str, var: Option<&str>, x: i64, n: usize, ln: usize) -> Result<usize, Gf2Error> {
    let mut total = 0i64;
    for t in e.split('+') {
        let t = t.trim();
        total += match t.parse::<i64>() {
            Ok(k) => k,
            Err(_) if Some(t) == var => x,
            Err(_) => return Err(err(ln, format!("unknown term `{t}`"))),
        };
    }
    if total < 1 || total as usize > n {
        return Err(err(ln, format!("point {total} outside 1..{n}")));
    }
    Ok(total as usize - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_listing() {
        let text = "dim 4\nmatrix X 2\n0 1\n1 0\nend\ngen p = perm prod i in {0,2} (i+1,i+2)\ngen q = kron I2 X\ngen r = block 2 2\nI2+E(1,2) 0\n0 X\nend\n";
        let g = parse_generators(text).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[0].1, g[1].1);
        assert!(g[2].1.get(0, 1) && g[2].1.get(0, 0) && g[2].1.get(2, 3) && !g[2].1.get(2, 2));
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_generators("dim 4\ngen p = perm (1,9)\n").unwrap_err();
        assert!(matches!(e, Gf2Error::Parse { line: 2, .. }));
        let e = parse_generators("dim 4\nmatrix X 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, Gf2Error::Parse { .. }));
        assert!(parse_generators("gen p = perm (1,2)\n").is_err());
        assert!(parse_generators("dim 3\ngen p = perm (1,2)(2,3)\n").is_err());
    }
}
