//! Table serialization.
//!
//! Binary layout, all integers little-endian:
//!
//! | bytes        | field                                      |
//! |--------------|--------------------------------------------|
//! | 4            | magic `TCTB`                               |
//! | 4 (u32)      | format version                             |
//! | 4 (u32)      | ngens                                      |
//! | 4 (u32)      | nlive (number of rows)                     |
//! | ngens        | one byte per generator, 1 if involutive    |
//! | 4·nlive·ncols| row-major u32 entries                      |
//!
//! Columns are one per involutive generator and two (g, g⁻¹) otherwise, in
//! generator order, so `ncols` follows from the involution flags.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{CosetTable, EnumerationError};

pub const TABLE_MAGIC: [u8; 4] = *b"TCTB";
pub const TABLE_VERSION: u32 = 1;

/// JSON form of a coset table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub version: u32,
    pub ngens: usize,
    pub involutive: Vec<bool>,
    /// Column labels as signed generator numbers: `g+1` or `-(g+1)`.
    pub columns: Vec<i32>,
    pub index: usize,
    pub rows: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + self.ngens() + 4 * self.data.len());
        out.extend_from_slice(&TABLE_MAGIC);
        out.extend_from_slice(&TABLE_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.ngens() as u32).to_le_bytes());
        out.extend_from_slice(&(self.nrows as u32).to_le_bytes());
        out.extend(self.involutive.iter().map(|&b| b as u8));
        for &e in &self.data {
            out.extend_from_slice(&e.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<CosetTable, EnumerationError> {
        let bad = |m: &str| EnumerationError::Format(m.to_string());
        if bytes.len() < 16 || bytes[0..4] != TABLE_MAGIC {
            return Err(bad("missing TCTB header"));
        }
        let word = |k: usize| u32::from_le_bytes(bytes[k..k + 4].try_into().unwrap());
        let version = word(4);
        if version != TABLE_VERSION {
            return Err(EnumerationError::Format(format!("unsupported version {version}")));
        }
        let ngens = word(8) as usize;
        let nrows = word(12) as usize;
        let flags = bytes.get(16..16 + ngens).ok_or_else(|| bad("truncated generator flags"))?;
        let mut involutive = Vec::with_capacity(ngens);
        for &f in flags {
            match f {
                0 => involutive.push(false),
                1 => involutive.push(true),
                _ => return Err(bad("generator flag must be 0 or 1")),
            }
        }
        let ncols: usize = involutive.iter().map(|&i| if i { 1 } else { 2 }).sum();
        let body = &bytes[16 + ngens..];
        if body.len() != 4 * nrows * ncols {
            return Err(EnumerationError::Format(format!("body has {} bytes, expected {}", body.len(), 4 * nrows * ncols)));
        }
        let data = body.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
        CosetTable::from_raw(involutive, data, nrows)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            version: TABLE_VERSION,
            ngens: self.ngens(),
            involutive: self.involutive.clone(),
            columns: self.cols.letters.iter().map(|l| l.signed()).collect(),
            index: self.nrows,
            rows: (0..self.nrows).map(|c| self.row(c).to_vec()).collect(),
        }
    }

    pub fn from_json(t: &TableJson) -> Result<CosetTable, EnumerationError> {
        if t.version != TABLE_VERSION {
            return Err(EnumerationError::Format(format!("unsupported version {}", t.version)));
        }
        if t.ngens != t.involutive.len() || t.index != t.rows.len() {
            return Err(EnumerationError::Format("header does not match body".into()));
        }
        let table = CosetTable::from_raw(t.involutive.clone(), t.rows.concat(), t.index)?;
        let columns: Vec<i32> = table.cols.letters.iter().map(|l| l.signed()).collect();
        if columns != t.columns {
            return Err(EnumerationError::Format("column labels do not match involution flags".into()));
        }
        Ok(table)
    }

    /// SHA-256 of the binary form of the standardized table, as hex.
    pub fn digest(&self) -> String {
        let bytes = self.standardize().to_bytes();
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{enumerate, EnumerationLimits};
    use crate::presentation::{coxeter_presentation, Presentation, Word};

    fn sample() -> CosetTable {
        let p = coxeter_presentation(&[3, 4]).unwrap();
        enumerate(&p, &[Word::gens(&[0])], &EnumerationLimits::default()).unwrap()
    }

    #[test]
    fn binary_round_trip() {
        let t = sample();
        let bytes = t.to_bytes();
        assert_eq!(&bytes[0..4], b"TCTB");
        let u = CosetTable::from_bytes(&bytes).unwrap();
        assert_eq!(u.index(), 24);
        assert_eq!(u.to_bytes(), bytes);
    }

    #[test]
    fn json_round_trip_with_free_generator() {
        let mut p = Presentation::new(vec!["x".into(), "y".into()], vec![false, true]);
        p.add_relator(Word::gens(&[0, 0, 0])).unwrap();
        p.add_relator(Word::gens(&[0, 1]).pow(2)).unwrap();
        let t = enumerate(&p, &[], &EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 6);
        let j = t.to_json();
        assert_eq!(j.columns, vec![1, -1, 2]);
        let text = serde_json::to_string(&j).unwrap();
        let back: TableJson = serde_json::from_str(&text).unwrap();
        assert_eq!(CosetTable::from_json(&back).unwrap().to_bytes(), t.to_bytes());
    }

    #[test]
    fn rejects_corrupt_data() {
        let mut bytes = sample().to_bytes();
        assert!(CosetTable::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let n = bytes.len();
        bytes[n - 4..].copy_from_slice(&1000u32.to_le_bytes());
        assert!(matches!(CosetTable::from_bytes(&bytes), Err(EnumerationError::NotClosed | EnumerationError::Inconsistent(_))));
        bytes[0] = b'X';
        assert!(CosetTable::from_bytes(&bytes).is_err());
    }

    #[test]
    fn digest_is_stable_under_renumbering() {
        let t = sample();
        assert_eq!(t.digest().len(), 64);
        assert_eq!(t.digest(), t.standardize().digest());
    }
}
