//! Square bit matrices over GF(2) of dimension at most 64, the 24-dimensional
//! generators shipped in `data/omega24.gf2`, the quadratic form Φ and the
//! permutation action induced on sets of vectors.
//!
//! Vectors are rows and act on the right: the image of `v` under `m` is `v·m`.

mod data;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::permgroup::{Perm, PermGroup};
use crate::presentation::{sigma_tau_on, Presentation, Side, Word};

pub use data::parse_generators;

pub const MAX_DIM: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} exceeds {MAX_DIM}")]
    TooLarge(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("letter for generator {gen} but only {count} matrices given")]
    InvalidLetter { gen: usize, count: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gf2Vector {
    n: u8,
    bits: u64,
}

impl Gf2Vector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        Gf2Vector { n: n as u8, bits: 0 }
    }

    /// Vector with ones in the listed (0-based) coordinates.
    pub fn from_support(n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Gf2Vector::zero(n);
        for i in support {
            assert!(i < n);
            v.bits |= 1 << i;
        }
        v
    }

    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(n <= MAX_DIM && (n == 64 || bits >> n == 0));
        Gf2Vector { n: n as u8, bits }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn add(&self, other: &Gf2Vector) -> Gf2Vector {
        assert_eq!(self.n, other.n);
        Gf2Vector { n: self.n, bits: self.bits ^ other.bits }
    }

    /// `self · m`.
    pub fn mul(&self, m: &Gf2Matrix) -> Result<Gf2Vector, Gf2Error> {
        if self.dim() != m.n {
            return Err(Gf2Error::DimensionMismatch(self.dim(), m.n));
        }
        Ok(self.mul_unchecked(m))
    }

    fn mul_unchecked(&self, m: &Gf2Matrix) -> Gf2Vector {
        let mut out = 0u64;
        let mut b = self.bits;
        while b != 0 {
            let i = b.trailing_zeros() as usize;
            out ^= m.rows[i];
            b &= b - 1;
        }
        Gf2Vector { n: self.n, bits: out }
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf2Matrix {
    n: usize,
    /// Bit `j` of `rows[i]` is entry `(i, j)`.
    rows: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(n: usize) -> Result<Self, Gf2Error> {
        if n > MAX_DIM {
            return Err(Gf2Error::TooLarge(n));
        }
        Ok(Gf2Matrix { n, rows: vec![0; n] })
    }

    pub fn identity(n: usize) -> Result<Self, Gf2Error> {
        let mut m = Gf2Matrix::zero(n)?;
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        Ok(m)
    }

    /// `E_ij` of size `n`, 0-based.
    pub fn unit(i: usize, j: usize, n: usize) -> Result<Self, Gf2Error> {
        let mut m = Gf2Matrix::zero(n)?;
        if i >= n || j >= n {
            return Err(Gf2Error::DimensionMismatch(i.max(j) + 1, n));
        }
        m.rows[i] = 1 << j;
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, Gf2Error> {
        let n = rows.len();
        let mut m = Gf2Matrix::zero(n)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Gf2Error::DimensionMismatch(r.len(), n));
            }
            for (j, &x) in r.iter().enumerate() {
                if x & 1 == 1 {
                    m.rows[i] |= 1 << j;
                }
            }
        }
        Ok(m)
    }

    /// Permutation matrix of `p`: coordinate `i` goes to `p(i)`.
    pub fn from_perm(p: &Perm) -> Result<Self, Gf2Error> {
        let mut m = Gf2Matrix::zero(p.degree())?;
        for i in 0..p.degree() {
            m.rows[i] = 1 << p.image(i);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        Gf2Vector { n: self.n as u8, bits: self.rows[i] }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.n != other.n {
            return Err(Gf2Error::DimensionMismatch(self.n, other.n));
        }
        Ok(Gf2Matrix { n: self.n, rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect() })
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.n != other.n {
            return Err(Gf2Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Gf2Matrix) -> Gf2Matrix {
        Gf2Matrix { n: self.n, rows: (0..self.n).map(|i| self.row(i).mul_unchecked(other).bits).collect() }
    }

    pub fn pow(&self, mut k: u64) -> Gf2Matrix {
        let mut base = self.clone();
        let mut acc = Gf2Matrix::identity(self.n).expect("dimension already checked");
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Gf2Matrix, Gf2Error> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv = Gf2Matrix::identity(n)?.rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1).ok_or(Gf2Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Ok(Gf2Matrix { n, rows: inv })
    }

    /// Least `k ≥ 1` with `self^k = I`.
    pub fn order(&self) -> Result<u64, Gf2Error> {
        self.inverse()?;
        let mut k = 1u64;
        let mut p = self.clone();
        while !p.is_identity() {
            p = p.mul_unchecked(self);
            k += 1;
        }
        Ok(k)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix { n: self.n, rows: vec![0; self.n] };
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    t.rows[j] |= 1 << i;
                }
            }
        }
        t
    }

    pub fn kron(a: &Gf2Matrix, b: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        let n = a.n * b.n;
        let mut m = Gf2Matrix::zero(n)?;
        for i in 0..a.n {
            for j in 0..a.n {
                if !a.get(i, j) {
                    continue;
                }
                for k in 0..b.n {
                    m.rows[i * b.n + k] |= b.rows[k] << (j * b.n);
                }
            }
        }
        Ok(m)
    }

    /// Assembles a matrix from a square grid of `k × k` blocks; `None` is zero.
    pub fn block(grid: &[Vec<Option<Gf2Matrix>>], k: usize) -> Result<Gf2Matrix, Gf2Error> {
        let r = grid.len();
        let mut m = Gf2Matrix::zero(r * k)?;
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != r {
                return Err(Gf2Error::DimensionMismatch(row.len(), r));
            }
            for (bj, cell) in row.iter().enumerate() {
                let Some(x) = cell else { continue };
                if x.n != k {
                    return Err(Gf2Error::DimensionMismatch(x.n, k));
                }
                for i in 0..k {
                    m.rows[bi * k + i] |= x.rows[i] << (bj * k);
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// Φ(v) = Σ vⱼ + Σ v₂ᵢ₋₁v₂ᵢ (mod 2), pairs taken in 1-based coordinates.
pub fn phi(v: &Gf2Vector) -> bool {
    let pairs = v.bits & (v.bits >> 1) & 0x5555_5555_5555_5555;
    (v.bits.count_ones() + pairs.count_ones()) % 2 == 1
}

/// Whether Φ(v·m) = Φ(v) on all basis vectors and all sums of two of them,
/// which suffices since the polar form of Φ is bilinear.
pub fn preserves_phi(m: &Gf2Matrix) -> bool {
    let n = m.dim();
    let e = |i: usize| Gf2Vector::from_bits(n, 1 << i);
    (0..n).all(|i| {
        phi(&e(i).mul_unchecked(m)) == phi(&e(i))
            && (i + 1..n).all(|j| {
                let v = e(i).add(&e(j));
                phi(&v.mul_unchecked(m)) == phi(&v)
            })
    })
}

/// Breadth-first orbit of `v`; generators are applied in the given order.
pub fn vector_orbit(v: Gf2Vector, gens: &[Gf2Matrix]) -> Result<Vec<Gf2Vector>, Gf2Error> {
    for g in gens {
        if g.dim() != v.dim() {
            return Err(Gf2Error::DimensionMismatch(g.dim(), v.dim()));
        }
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(v);
    let mut out = vec![v];
    let mut k = 0;
    while k < out.len() {
        let x = out[k];
        for g in gens {
            let y = x.mul_unchecked(g);
            if seen.insert(y) {
                out.push(y);
            }
        }
        k += 1;
    }
    Ok(out)
}

/// One permutation per matrix on the indices of `points`. Fails if the set
/// is not closed under some matrix.
pub fn induced_perm_action(points: &[Gf2Vector], gens: &[Gf2Matrix]) -> Result<PermGroup, Gf2Error> {
    let index: HashMap<Gf2Vector, u32> = points.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let mut perms = Vec::with_capacity(gens.len());
    for (gi, g) in gens.iter().enumerate() {
        let mut images = Vec::with_capacity(points.len());
        for v in points {
            let w = v.mul(g)?;
            let i = index.get(&w).ok_or_else(|| Gf2Error::Parse {
                line: 0,
                msg: format!("point set not closed under generator {gi}"),
            })?;
            images.push(*i);
        }
        perms.push(Perm::from_images(images).map_err(|_| Gf2Error::Singular)?);
    }
    Ok(PermGroup::new(points.len(), perms))
}

/// Product of the matrices along a word; inverse letters use matrix inverses.
pub fn word_matrix(w: &Word, mats: &[Gf2Matrix]) -> Result<Gf2Matrix, Gf2Error> {
    let n = mats.first().map(|m| m.dim()).unwrap_or(0);
    let mut acc = Gf2Matrix::identity(n)?;
    for l in w.iter() {
        let g = l.generator();
        let m = mats.get(g).ok_or(Gf2Error::InvalidLetter { gen: g, count: mats.len() })?;
        let m = if l.is_inverse() { m.inverse()? } else { m.clone() };
        acc = acc.mul(&m)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relator: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Evaluates every relator of `p` on the matrices.
pub fn check_relations(p: &Presentation, mats: &[Gf2Matrix]) -> Result<RelationReport, Gf2Error> {
    if mats.len() != p.ngens() {
        return Err(Gf2Error::DimensionMismatch(mats.len(), p.ngens()));
    }
    let checks = p
        .relators()
        .iter()
        .map(|r| Ok(RelationCheck { relator: p.display_word(r).to_string(), holds: word_matrix(r, mats)?.is_identity() }))
        .collect::<Result<_, Gf2Error>>()?;
    Ok(RelationReport { checks })
}

pub const OMEGA24: &str = include_str!("../../data/omega24.gf2");

/// The six matrices â, b̂, ĉ, d̂, ê, f̂ in that order.
pub fn builtin_generators() -> Vec<Gf2Matrix> {
    parse_generators(OMEGA24).expect("bundled generator file").into_iter().map(|(_, m)| m).collect()
}

/// τ̂, the image of τ = c^{de} under the generator assignment.
pub fn tau_hat(gens: &[Gf2Matrix]) -> Result<Gf2Matrix, Gf2Error> {
    let (_, tau) = sigma_tau_on(Side::Left.roles());
    word_matrix(&tau, gens)
}

/// Generators of the stabilizer of the first block: â, b̂, ĉ, d̂, τ̂, f̂.
pub fn block_stabilizer_generators(gens: &[Gf2Matrix]) -> Result<Vec<Gf2Matrix>, Gf2Error> {
    let tau = tau_hat(gens)?;
    Ok(vec![gens[0].clone(), gens[1].clone(), gens[2].clone(), gens[3].clone(), tau, gens[5].clone()])
}

/// Nonzero vectors supported inside one of the consecutive `k`-blocks.
pub fn block_vectors(n: usize, k: usize) -> Vec<Gf2Vector> {
    let mut out = Vec::new();
    for b in 0..n / k {
        for x in 1u64..(1 << k) {
            out.push(Gf2Vector::from_bits(n, x << (b * k)));
        }
    }
    out
}

/// The all-ones vector of the first 8-block.
pub fn block_one_all_ones() -> Gf2Vector {
    Gf2Vector::from_support(24, 0..8)
}
