//! Todd–Coxeter coset enumeration.
//!
//! [`enumerate`] returns a closed, standardized [`CosetTable`]: coset 0 is the
//! subgroup, and the remaining cosets are numbered in breadth-first order of
//! first appearance (rows in order, columns in generator order). Two runs with
//! different strategies on the same input therefore give identical tables.

mod engine;
mod export;
mod rewrite;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permgroup::{Perm, PermGroup};
use crate::presentation::{cyclic_reduce, free_reduce, Letter, Presentation, PresentationError, Word};

pub use export::{TableJson, TABLE_MAGIC, TABLE_VERSION};
pub use rewrite::{reidemeister_schreier, SchreierPresentation};

use engine::{Engine, UNDEF};

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("coset limit {max_cosets} reached ({live} live, {defined} defined); try a larger limit or another strategy")]
    CosetLimitExceeded { max_cosets: usize, live: usize, defined: u64 },
    #[error(transparent)]
    InvalidWord(#[from] PresentationError),
    #[error("coset table is not closed")]
    NotClosed,
    #[error("coset table is inconsistent: {0}")]
    Inconsistent(String),
    #[error("malformed table data: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Felsch,
    Hlt,
    HltLookahead,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Felsch => "felsch",
            Strategy::Hlt => "hlt",
            Strategy::HltLookahead => "hlt-lookahead",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "felsch" => Ok(Strategy::Felsch),
            "hlt" => Ok(Strategy::Hlt),
            "hlt-lookahead" | "hlt_lookahead" => Ok(Strategy::HltLookahead),
            other => Err(format!("unknown strategy `{other}` (felsch, hlt, hlt-lookahead)")),
        }
    }
}

/// Default row cap: 2²⁶ cosets.
pub const DEFAULT_MAX_COSETS: usize = 1 << 26;

/// Largest cap for which Felsch is the default strategy.
pub const FELSCH_DEFAULT_THRESHOLD: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationLimits {
    pub max_cosets: usize,
    /// `None` picks Felsch up to [`FELSCH_DEFAULT_THRESHOLD`] rows, HLT with lookahead above.
    pub strategy: Option<Strategy>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_cosets: DEFAULT_MAX_COSETS, strategy: None }
    }
}

impl EnumerationLimits {
    pub fn new(max_cosets: usize, strategy: Strategy) -> Self {
        EnumerationLimits { max_cosets, strategy: Some(strategy) }
    }

    pub fn with_max(max_cosets: usize) -> Self {
        EnumerationLimits { max_cosets, strategy: None }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy.unwrap_or(if self.max_cosets <= FELSCH_DEFAULT_THRESHOLD {
            Strategy::Felsch
        } else {
            Strategy::HltLookahead
        })
    }
}

/// Counters reported by the enumerator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub defined: u64,
    pub max_live: usize,
    pub coincidences: u64,
    pub lookaheads: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Snapshot passed to progress callbacks.
#[derive(Clone, Copy, Debug)]
pub struct Progress {
    pub live: usize,
    pub defined: u64,
    pub coincidences: u64,
    pub max_live: usize,
}

/// Column layout: one column per involutive generator, two (g, g⁻¹) otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Columns {
    letters: Vec<Letter>,
    inverse: Vec<usize>,
    /// Column of the positive letter of each generator.
    of_gen: Vec<usize>,
}

impl Columns {
    fn new(involutive: &[bool]) -> Self {
        let mut letters = Vec::new();
        let mut inverse = Vec::new();
        let mut of_gen = Vec::new();
        for (g, &inv) in involutive.iter().enumerate() {
            let c = letters.len();
            of_gen.push(c);
            letters.push(Letter::gen(g));
            if inv {
                inverse.push(c);
            } else {
                letters.push(Letter::inv(g));
                inverse.push(c + 1);
                inverse.push(c);
            }
        }
        Columns { letters, inverse, of_gen }
    }

    fn of_letter(&self, l: Letter) -> usize {
        let c = self.of_gen[l.generator()];
        if l.is_inverse() {
            self.inverse[c]
        } else {
            c
        }
    }

    fn word(&self, w: &Word) -> Vec<u32> {
        w.iter().map(|l| self.of_letter(l) as u32).collect()
    }
}

/// A closed coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    involutive: Vec<bool>,
    cols: Columns,
    data: Vec<u32>,
    nrows: usize,
    stats: EnumerationStats,
}

impl CosetTable {
    fn ncols(&self) -> usize {
        self.cols.letters.len()
    }

    pub fn ngens(&self) -> usize {
        self.involutive.len()
    }

    pub fn involutive(&self) -> &[bool] {
        &self.involutive
    }

    /// Number of live cosets, i.e. the index of the subgroup.
    pub fn index(&self) -> usize {
        self.nrows
    }

    pub fn stats(&self) -> &EnumerationStats {
        &self.stats
    }

    /// Letters labelling the table columns.
    pub fn column_letters(&self) -> &[Letter] {
        &self.cols.letters
    }

    pub fn row(&self, coset: usize) -> &[u32] {
        let n = self.ncols();
        &self.data[coset * n..(coset + 1) * n]
    }

    /// Image of `coset` under a single letter.
    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.data[coset * self.ncols() + self.cols.of_letter(l)] as usize
    }

    /// Image of `coset` under a word.
    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.iter().fold(coset, |c, l| self.act(c, l))
    }

    /// Checks that every relator of `p` fixes every coset.
    pub fn relators_hold(&self, p: &Presentation) -> bool {
        (0..self.nrows).all(|c| p.relators().iter().all(|r| self.trace(c, r) == c))
    }

    /// Renumbers cosets in breadth-first order from coset 0.
    pub fn standardize(&self) -> CosetTable {
        let n = self.nrows;
        let ncols = self.ncols();
        let mut newidx = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        newidx[0] = 0;
        order.push(0usize);
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for x in 0..ncols {
                let d = self.data[c * ncols + x] as usize;
                if newidx[d] == UNDEF {
                    newidx[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut data = vec![0u32; self.data.len()];
        for (new, &old) in order.iter().enumerate() {
            for x in 0..ncols {
                data[new * ncols + x] = newidx[self.data[old * ncols + x] as usize];
            }
        }
        CosetTable { involutive: self.involutive.clone(), cols: self.cols.clone(), data, nrows: order.len(), stats: self.stats }
    }

    pub fn is_standard(&self) -> bool {
        *self == self.standardize()
    }

    /// Schreier transversal of a standardized table: for each coset but 0 the
    /// `(row, column)` edge through which it was first reached.
    pub fn transversal(&self) -> Vec<Option<(usize, Letter)>> {
        let ncols = self.ncols();
        let mut parent = vec![None; self.nrows];
        let mut seen = vec![false; self.nrows];
        seen[0] = true;
        for c in 0..self.nrows {
            for x in 0..ncols {
                let d = self.data[c * ncols + x] as usize;
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = Some((c, self.cols.letters[x]));
                }
            }
        }
        parent
    }

    /// Coset representatives from the Schreier transversal.
    pub fn representatives(&self) -> Vec<Word> {
        let parent = self.transversal();
        let mut reps: Vec<Option<Word>> = vec![None; self.nrows];
        reps[0] = Some(Word::empty());
        fn build(c: usize, parent: &[Option<(usize, Letter)>], reps: &mut [Option<Word>]) -> Word {
            if let Some(w) = &reps[c] {
                return w.clone();
            }
            let (p, l) = parent[c].expect("reachable coset");
            let mut w = build(p, parent, reps);
            w.push(l);
            reps[c] = Some(w.clone());
            w
        }
        (0..self.nrows).map(|c| build(c, &parent, &mut reps)).collect()
    }

    /// One permutation per generator, acting on cosets on the right.
    pub fn permutation_rep(&self) -> PermGroup {
        let ncols = self.ncols();
        let gens = (0..self.ngens())
            .map(|g| {
                let col = self.cols.of_gen[g];
                let images: Vec<u32> = (0..self.nrows).map(|c| self.data[c * ncols + col]).collect();
                Perm::from_images_unchecked(images)
            })
            .collect();
        PermGroup::new(self.nrows, gens)
    }

    /// Validates closure and consistency of raw table data.
    fn from_raw(involutive: Vec<bool>, data: Vec<u32>, nrows: usize) -> Result<CosetTable, EnumerationError> {
        let cols = Columns::new(&involutive);
        let ncols = cols.letters.len();
        if data.len() != nrows * ncols || nrows == 0 {
            return Err(EnumerationError::Format(format!("{} entries for {nrows} rows × {ncols} columns", data.len())));
        }
        for c in 0..nrows {
            for x in 0..ncols {
                let d = data[c * ncols + x];
                if d == UNDEF || d as usize >= nrows {
                    return Err(EnumerationError::NotClosed);
                }
                if data[d as usize * ncols + cols.inverse[x]] as usize != c {
                    return Err(EnumerationError::Inconsistent(format!("row {c} column {x}")));
                }
            }
        }
        Ok(CosetTable { involutive, cols, data, nrows, stats: EnumerationStats::default() })
    }
}

/// Compiled relators: plain scan words plus Felsch conjugates by first column.
fn compile_relators(p: &Presentation, cols: &Columns) -> (Vec<Vec<u32>>, Vec<Vec<Vec<u32>>>) {
    let inv = p.involutive();
    let mut relators = Vec::new();
    let mut seen_rel = HashSet::new();
    let mut conjugates = vec![Vec::new(); cols.letters.len()];
    let mut seen_conj = HashSet::new();
    for r in p.relators() {
        if p.is_involution_relator(r) {
            continue;
        }
        let r = cyclic_reduce(r, inv);
        if r.is_empty() || !seen_rel.insert(r.clone()) {
            continue;
        }
        relators.push(cols.word(&r));
        for w in [r.clone(), free_reduce(&r.inverse(), inv)] {
            for k in 0..w.len() {
                let c = cols.word(&w.rotate(k));
                if seen_conj.insert(c.clone()) {
                    conjugates[c[0] as usize].push(c);
                }
            }
        }
    }
    // Short relators first: they close gaps fastest.
    relators.sort_by_key(|r| r.len());
    for list in &mut conjugates {
        list.sort_by_key(|r| r.len());
    }
    (relators, conjugates)
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in `p`.
pub fn enumerate(p: &Presentation, subgroup: &[Word], limits: &EnumerationLimits) -> Result<CosetTable, EnumerationError> {
    enumerate_with_progress(p, subgroup, limits, None)
}

/// [`enumerate`] over a subgroup named in the presentation.
pub fn enumerate_named(p: &Presentation, name: &str, limits: &EnumerationLimits) -> Result<CosetTable, EnumerationError> {
    enumerate(p, p.subgroup(name)?, limits)
}

/// [`enumerate`] with a callback invoked every `every` coset definitions.
pub fn enumerate_with_progress(
    p: &Presentation,
    subgroup: &[Word],
    limits: &EnumerationLimits,
    progress: Option<(u64, &mut dyn FnMut(&Progress))>,
) -> Result<CosetTable, EnumerationError> {
    let started = Instant::now();
    for w in subgroup.iter().chain(p.relators()) {
        p.check_word(w)?;
    }
    let cols = Columns::new(p.involutive());
    let (relators, conjugates) = compile_relators(p, &cols);
    let subgroup: Vec<Vec<u32>> = subgroup
        .iter()
        .map(|w| free_reduce(w, p.involutive()))
        .filter(|w| !w.is_empty())
        .map(|w| cols.word(&w))
        .collect();
    let max_rows = limits.max_cosets.max(1);
    if cols.letters.is_empty() {
        let stats = EnumerationStats { defined: 1, max_live: 1, elapsed: started.elapsed(), ..Default::default() };
        return Ok(CosetTable { involutive: vec![], cols, data: vec![], nrows: 1, stats });
    }
    let mut engine = Engine::new(cols.inverse.clone(), max_rows, progress);
    engine.run(limits.strategy(), &subgroup, &relators, &conjugates)?;
    let (data, nrows, stats) = engine.finish(started);
    let table = CosetTable { involutive: p.involutive().to_vec(), cols, data, nrows, stats };
    Ok(table.standardize())
}

/// Order of the group by enumerating over the trivial subgroup.
pub fn group_order(p: &Presentation, limits: &EnumerationLimits) -> Result<usize, EnumerationError> {
    Ok(enumerate(p, &[], limits)?.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{
        coxeter_presentation, locally_toroidal_presentation, parse, toroidal_base_presentation, y_presentation,
        ToroidalType, FACET, VERTEX,
    };

    const ALL: [Strategy; 3] = [Strategy::Felsch, Strategy::Hlt, Strategy::HltLookahead];

    fn limits(s: Strategy) -> EnumerationLimits {
        EnumerationLimits::new(1 << 22, s)
    }

    #[test]
    fn dihedral_orders() {
        for k in 2..=8u32 {
            let p = coxeter_presentation(&[k]).unwrap();
            for s in ALL {
                assert_eq!(enumerate(&p, &[], &limits(s)).unwrap().index(), 2 * k as usize, "k={k} {s}");
            }
        }
    }

    #[test]
    fn f4_order() {
        let p = coxeter_presentation(&[3, 4, 3]).unwrap();
        for s in ALL {
            assert_eq!(group_order(&p, &limits(s)).unwrap(), 1152);
        }
    }

    #[test]
    fn a3_is_s4() {
        let p = y_presentation(1, 1, 0, &[]).unwrap();
        assert_eq!(group_order(&p, &limits(Strategy::Felsch)).unwrap(), 24);
    }

    #[test]
    fn one_generator_over_itself() {
        let p = coxeter_presentation(&[]).unwrap();
        assert_eq!(p.ngens(), 1);
        let t = enumerate(&p, &[Word::gens(&[0])], &limits(Strategy::Felsch)).unwrap();
        assert_eq!(t.index(), 1);
        assert_eq!(group_order(&p, &limits(Strategy::Hlt)).unwrap(), 2);
    }

    #[test]
    fn free_generators() {
        // ⟨x, y | x³, y², (xy)³⟩ is the (2,3,3) triangle group ≅ A4, order 12.
        let p = parse("free x; gens y; rel x^3; rel (x y)^3;").unwrap();
        for s in ALL {
            let t = enumerate(&p, &[], &limits(s)).unwrap();
            assert_eq!(t.index(), 12);
            assert!(t.relators_hold(&p));
        }
    }

    #[test]
    fn rank5_toroidal_orders() {
        for t in [ToroidalType::single(2), ToroidalType::double(2)] {
            let p = toroidal_base_presentation(t);
            let table = enumerate_named(&p, VERTEX, &limits(Strategy::Felsch)).unwrap();
            assert_eq!(table.index() as u64 * 1152, t.group_order());
        }
    }

    #[test]
    fn strategies_agree_on_standard_table() {
        let p = locally_toroidal_presentation(ToroidalType::single(2), None);
        let tables: Vec<CosetTable> = [Strategy::Felsch, Strategy::HltLookahead]
            .iter()
            .map(|&s| enumerate_named(&p, VERTEX, &limits(s)).unwrap())
            .collect();
        assert_eq!(tables[0].index(), 32);
        assert_eq!(tables[0].data, tables[1].data);
    }

    #[test]
    fn standardize_is_idempotent_and_fixes_row_zero() {
        let p = coxeter_presentation(&[3, 4, 3]).unwrap();
        let t = enumerate(&p, &[Word::gens(&[0])], &limits(Strategy::Hlt)).unwrap();
        assert!(t.is_standard());
        assert_eq!(t.standardize(), t);
        assert_eq!(t.trace(0, &Word::gens(&[0])), 0);
    }

    #[test]
    fn closed_tables_are_consistent() {
        let p = coxeter_presentation(&[3, 3, 3]).unwrap();
        let t = enumerate(&p, &[Word::gens(&[0]), Word::gens(&[2])], &limits(Strategy::Felsch)).unwrap();
        assert_eq!(t.index(), 30);
        assert!(t.relators_hold(&p));
        for c in 0..t.index() {
            for &l in t.column_letters() {
                assert_eq!(t.act(t.act(c, l), l.inverse()), c);
            }
        }
    }

    #[test]
    fn coset_limit_is_reported() {
        let p = coxeter_presentation(&[3, 4, 3]).unwrap();
        for s in ALL {
            let err = enumerate(&p, &[], &EnumerationLimits::new(100, s)).unwrap_err();
            assert!(matches!(err, EnumerationError::CosetLimitExceeded { max_cosets: 100, .. }), "{s}");
        }
    }

    #[test]
    fn invalid_subgroup_word() {
        let p = coxeter_presentation(&[3]).unwrap();
        let err = enumerate(&p, &[Word::gens(&[4])], &limits(Strategy::Felsch)).unwrap_err();
        assert!(matches!(err, EnumerationError::InvalidWord(_)));
    }

    #[test]
    fn lookahead_recovers_from_tight_limit() {
        // HLT needs more rows than Felsch here; lookahead lets it finish in a
        // cap that plain HLT cannot.
        let p = locally_toroidal_presentation(ToroidalType::single(2), None);
        let felsch = enumerate_named(&p, FACET, &limits(Strategy::Felsch)).unwrap();
        let cap = felsch.stats().max_live * 2;
        let la = enumerate_named(&p, FACET, &EnumerationLimits::new(cap, Strategy::HltLookahead)).unwrap();
        assert_eq!(la.index(), 128);
        assert_eq!(la.data, felsch.data);
    }

    #[test]
    fn default_strategy_threshold() {
        assert_eq!(EnumerationLimits::default().strategy(), Strategy::HltLookahead);
        assert_eq!(EnumerationLimits::with_max(1000).strategy(), Strategy::Felsch);
        assert_eq!(EnumerationLimits::default().max_cosets, 1 << 26);
    }

    #[test]
    fn progress_callback_fires() {
        let p = coxeter_presentation(&[3, 4, 3]).unwrap();
        let mut calls = 0;
        let mut cb = |_: &Progress| calls += 1;
        enumerate_with_progress(&p, &[], &limits(Strategy::Felsch), Some((100, &mut cb))).unwrap();
        assert!(calls >= 10);
    }
}
