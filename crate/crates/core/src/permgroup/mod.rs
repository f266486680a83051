//! Permutation groups on `0..degree` with a Schreier–Sims stabilizer chain.
//!
//! Permutations act on the right: `p.then(q)` applies `p` first.

mod chain;
mod io;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::presentation::Word;

pub use chain::StabChain;
pub use io::{format_perm_generators, parse_perm_generators};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("letter for generator {gen} but group has {ngens} generators")]
    InvalidLetter { gen: usize, ngens: usize },
    #[error("cycle point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("enumeration budget of {0} elements exceeded")]
    BudgetExceeded(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijection(n));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if touched[p] {
                    return Err(PermError::NotBijection(degree));
                }
                touched[p] = true;
                images[p] = c[(k + 1) % c.len()] as u32;
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn smallest_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &j)| i as u32 != j).map(|(i, _)| i)
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                c.push(p);
                p = self.image(p);
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.cycles().iter().fold(BigUint::from(1u32), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A permutation group given by generators. The stabilizer chain is built
/// on first use.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// Panics if a generator has the wrong degree; see [`PermGroup::try_new`].
    pub fn new(degree: usize, gens: Vec<Perm>) -> Self {
        Self::try_new(degree, gens).expect("generator degree")
    }

    pub fn try_new(degree: usize, gens: Vec<Perm>) -> Result<Self, PermError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(g.degree(), degree));
            }
        }
        Ok(PermGroup { degree, gens, chain: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.gens))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.chain().contains(p)
    }

    /// Evaluates a word in the generators; letter `i` maps to `gens[i]`.
    pub fn word_image(&self, w: &Word) -> Result<Perm, PermError> {
        let mut acc = Perm::identity(self.degree);
        for l in w.iter() {
            let g = l.generator();
            let p = self.gens.get(g).ok_or(PermError::InvalidLetter { gen: g, ngens: self.gens.len() })?;
            acc = if l.is_inverse() { acc.then(&p.inverse()) } else { acc.then(p) };
        }
        Ok(acc)
    }

    pub fn element_order(&self, w: &Word) -> Result<BigUint, PermError> {
        Ok(self.word_image(w)?.order())
    }

    /// Subgroup generated by the listed generators.
    pub fn parabolic(&self, gens: &[usize]) -> Result<PermGroup, PermError> {
        let mut out = Vec::with_capacity(gens.len());
        for &g in gens {
            out.push(self.gens.get(g).cloned().ok_or(PermError::InvalidLetter { gen: g, ngens: self.gens.len() })?);
        }
        PermGroup::try_new(self.degree, out)
    }

    /// Order of `self ∩ other`, found by running through the smaller group
    /// and testing membership in the larger. Fails if the smaller group has
    /// more than `budget` elements.
    pub fn intersection_order(&self, other: &PermGroup, budget: u64) -> Result<BigUint, PermError> {
        if self.degree != other.degree {
            return Err(PermError::DegreeMismatch(self.degree, other.degree));
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let join = StabChain::new(self.degree, &gens);
        let base = join.base();
        let a = StabChain::with_base(self.degree, &self.gens, &base);
        let b = StabChain::with_base(self.degree, &other.gens, &base);
        intersection_order_on_base(&a, &b, budget)
    }

    /// Orbit of `points` under the generators, in discovery order.
    pub fn orbit(&self, points: &[usize]) -> Vec<usize> {
        orbit(self.degree, &self.gens, points)
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit(&[p]);
            for &q in &o {
                seen[q] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }
}

/// `|A ∩ B|` for chains sharing a base of a common overgroup.
pub(crate) fn intersection_order_on_base(a: &StabChain, b: &StabChain, budget: u64) -> Result<BigUint, PermError> {
    debug_assert_eq!(a.base(), b.base());
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.order() > BigUint::from(budget) {
        return Err(PermError::BudgetExceeded(budget));
    }
    let base: Vec<u32> = small.base().iter().map(|&x| x as u32).collect();
    let mut count = 0u64;
    let mut scratch = vec![0u32; base.len()];
    small.for_each_image_of(&base, &mut |imgs| {
        scratch.copy_from_slice(imgs);
        if large.contains_by_base_images(&mut scratch) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

pub fn orbit(degree: usize, gens: &[Perm], points: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for &p in points {
        if !seen[p] {
            seen[p] = true;
            out.push(p);
        }
    }
    let mut k = 0;
    while k < out.len() {
        let p = out[k];
        for g in gens {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                out.push(q);
            }
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute_order(degree: usize, gens: &[Perm]) -> usize {
        let mut seen: HashSet<Perm> = HashSet::new();
        let id = Perm::identity(degree);
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for g in gens {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
        seen.len()
    }

    fn cyc(n: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..=7usize {
            let g = PermGroup::new(n, vec![cyc(n, &[&[0, 1]]), cyc(n, &[&(0..n).collect::<Vec<_>>()])]);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(g.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(5, vec![Perm::identity(5)]);
        assert_eq!(g.order(), BigUint::from(1u32));
        assert!(g.contains(&Perm::identity(5)));
        assert!(!g.contains(&cyc(5, &[&[0, 1]])));
    }

    #[test]
    fn chain_matches_closure() {
        let cases: Vec<(usize, Vec<Perm>)> = vec![
            (8, vec![cyc(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]), cyc(8, &[&[0, 4], &[1, 7], &[2, 6], &[3, 5]])]),
            (6, vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]]), cyc(6, &[&[0, 3], &[1, 4], &[2, 5]])]),
            (7, vec![cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]]), cyc(7, &[&[1, 2, 4], &[3, 6, 5]])]),
            (9, vec![cyc(9, &[&[0, 1, 2], &[3, 4, 5]]), cyc(9, &[&[2, 3], &[6, 7, 8]])]),
        ];
        for (n, gens) in cases {
            let g = PermGroup::new(n, gens.clone());
            assert_eq!(g.order(), BigUint::from(brute_order(n, &gens)));
            let mut count = 0usize;
            g.chain().for_each_element(|p| {
                assert!(g.contains(p));
                count += 1;
            });
            assert_eq!(BigUint::from(count), g.order());
        }
    }

    #[test]
    fn word_images_and_orders() {
        let g = PermGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[1, 2]]), cyc(4, &[&[2, 3]])]);
        assert_eq!(g.order(), BigUint::from(24u32));
        let w = Word::gens(&[0, 1]);
        let p = g.word_image(&w).unwrap();
        assert_eq!(p, cyc(4, &[&[0, 1]]).then(&cyc(4, &[&[1, 2]])));
        assert_eq!(p.order(), BigUint::from(3u32));
        assert!(g.contains(&p));
        assert_eq!(g.word_image(&w.inverse()).unwrap(), p.inverse());
        assert!(g.word_image(&Word::gens(&[3])).is_err());
    }

    #[test]
    fn intersection_is_symmetric() {
        let n = 6;
        let s6 = PermGroup::new(n, vec![cyc(n, &[&[0, 1]]), cyc(n, &[&[0, 1, 2, 3, 4, 5]])]);
        let a = s6.clone();
        let b = PermGroup::new(n, vec![cyc(n, &[&[0, 1, 2]]), cyc(n, &[&[3, 4]])]);
        let c = PermGroup::new(n, vec![cyc(n, &[&[0, 1]]), cyc(n, &[&[2, 3]]), cyc(n, &[&[4, 5]])]);
        assert_eq!(a.intersection_order(&b, 1000).unwrap(), BigUint::from(6u32));
        assert_eq!(b.intersection_order(&c, 1000).unwrap(), BigUint::from(1u32));
        assert_eq!(c.intersection_order(&b, 1000).unwrap(), BigUint::from(1u32));
        let d = PermGroup::new(n, vec![cyc(n, &[&[3, 4], &[0, 1]]), cyc(n, &[&[2, 3]])]);
        assert_eq!(b.intersection_order(&d, 1000).unwrap(), d.intersection_order(&b, 1000).unwrap());
        let e = PermGroup::new(n, vec![cyc(n, &[&[3, 4]]), cyc(n, &[&[0, 1]])]);
        assert_eq!(b.intersection_order(&e, 1000).unwrap(), BigUint::from(2u32));
        assert!(matches!(s6.intersection_order(&s6, 10), Err(PermError::BudgetExceeded(10))));
    }

    #[test]
    fn intersection_matches_element_sets() {
        let n = 7;
        let groups = [
            PermGroup::new(n, vec![cyc(n, &[&[0, 1, 2, 3]]), cyc(n, &[&[0, 1]])]),
            PermGroup::new(n, vec![cyc(n, &[&[2, 3, 4, 5, 6]]), cyc(n, &[&[2, 3]])]),
            PermGroup::new(n, vec![cyc(n, &[&[0, 4], &[1, 5]]), cyc(n, &[&[0, 1], &[4, 5]]), cyc(n, &[&[2, 6]])]),
            PermGroup::new(n, vec![cyc(n, &[&[0, 1, 2, 3, 4, 5, 6]]), cyc(n, &[&[1, 2, 4], &[3, 6, 5]])]),
        ];
        let elements = |g: &PermGroup| {
            let mut s = HashSet::new();
            g.chain().for_each_element(|p| {
                s.insert(p.clone());
            });
            s
        };
        for a in &groups {
            for b in &groups {
                let expected = elements(a).intersection(&elements(b)).count();
                assert_eq!(a.intersection_order(b, 10_000).unwrap(), BigUint::from(expected));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 5]]).is_err());
        assert!(PermGroup::try_new(3, vec![Perm::identity(4)]).is_err());
    }

    #[test]
    fn orbits_partition() {
        let g = PermGroup::new(7, vec![cyc(7, &[&[0, 2]]), cyc(7, &[&[2, 4], &[1, 3]])]);
        assert_eq!(g.orbits(), vec![vec![0, 2, 4], vec![1, 3], vec![5], vec![6]]);
    }
}
