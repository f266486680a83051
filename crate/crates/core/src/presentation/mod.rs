//! Words, presentations and the builders for the string Coxeter groups,
//! their toroidal quotients and the star-shaped `Y` diagrams.

mod builders;
mod dsl;
mod word;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use builders::*;
pub use dsl::parse;
pub use word::{conjugate, cyclic_reduce, free_reduce, Letter, Word, WordDisplay};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("Coxeter label {0} is below 2")]
    InvalidLabel(u32),
    #[error("letter refers to generator {gen} but only {ngens} generators exist")]
    InvalidLetter { gen: usize, ngens: usize },
    #[error("generator map has no image for generator {0}")]
    MissingImage(usize),
    #[error("toroidal parameter s = {0} must be at least 2")]
    InvalidToroidal(u32),
    #[error("cannot parse toroidal type {0:?} (expected e.g. 3:single or 2:double)")]
    BadToroidalLiteral(String),
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: undefined name `{name}`")]
    UndefinedName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: power must be at least 1, got {power}")]
    BadPower { line: usize, col: usize, power: i64 },
    #[error("unknown subgroup `{0}`")]
    UnknownSubgroup(String),
}

/// A finitely presented group together with named subgroup generator lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    names: Vec<String>,
    involutive: Vec<bool>,
    relators: Vec<Word>,
    subgroups: Vec<(String, Vec<Word>)>,
}

impl Presentation {
    /// New presentation with no relators besides `g²` for each involutive `g`.
    pub fn new(names: Vec<String>, involutive: Vec<bool>) -> Self {
        assert_eq!(names.len(), involutive.len());
        let relators = involutive
            .iter()
            .enumerate()
            .filter(|(_, &inv)| inv)
            .map(|(g, _)| Word::gens(&[g, g]))
            .collect();
        Presentation { names, involutive, relators, subgroups: Vec::new() }
    }

    /// All generators involutive, named `a, b, c, …` (or `g0, g1, …` past 26).
    pub fn involutions(ngens: usize) -> Self {
        Presentation::new(default_names(ngens), vec![true; ngens])
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn involutive(&self) -> &[bool] {
        &self.involutive
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Relators other than the `g²` of involutive generators.
    pub fn extra_relators(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().filter(move |r| !self.is_involution_relator(r))
    }

    pub fn is_involution_relator(&self, r: &Word) -> bool {
        let l = r.letters();
        l.len() == 2 && l[0] == l[1] && !l[0].is_inverse() && self.involutive[l[0].generator()]
    }

    pub fn subgroups(&self) -> &[(String, Vec<Word>)] {
        &self.subgroups
    }

    pub fn subgroup(&self, name: &str) -> Result<&[Word], PresentationError> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, w)| w.as_slice())
            .ok_or_else(|| PresentationError::UnknownSubgroup(name.to_string()))
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        match w.iter().find(|l| l.generator() >= self.ngens()) {
            Some(l) => Err(PresentationError::InvalidLetter { gen: l.generator(), ngens: self.ngens() }),
            None => Ok(()),
        }
    }

    pub fn reduce(&self, w: &Word) -> Word {
        free_reduce(w, &self.involutive)
    }

    /// Appends a relator after free reduction; empty results are dropped.
    pub fn add_relator(&mut self, w: Word) -> Result<(), PresentationError> {
        self.check_word(&w)?;
        let w = self.reduce(&w);
        if !w.is_empty() && !self.relators.contains(&w) {
            self.relators.push(w);
        }
        Ok(())
    }

    /// Adds (or replaces) a named subgroup.
    pub fn set_subgroup(&mut self, name: &str, words: Vec<Word>) -> Result<(), PresentationError> {
        for w in &words {
            self.check_word(w)?;
        }
        let words = words.iter().map(|w| self.reduce(w)).collect();
        match self.subgroups.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = words,
            None => self.subgroups.push((name.to_string(), words)),
        }
        Ok(())
    }

    /// Subgroup generated by a set of generators, as single-letter words.
    pub fn set_parabolic(&mut self, name: &str, gens: &[usize]) -> Result<(), PresentationError> {
        self.set_subgroup(name, gens.iter().map(|&g| Word::gens(&[g])).collect())
    }

    /// Presentation on the generators in `gens` keeping only relators that
    /// use nothing else. Generators are renumbered in the given order.
    pub fn restrict(&self, gens: &[usize]) -> Presentation {
        let mut map = vec![None; self.ngens()];
        for (new, &old) in gens.iter().enumerate() {
            map[old] = Some(new);
        }
        let names = gens.iter().map(|&g| self.names[g].clone()).collect();
        let involutive = gens.iter().map(|&g| self.involutive[g]).collect();
        let mut p = Presentation::new(names, involutive);
        for r in self.extra_relators() {
            let letters: Option<Vec<Letter>> = r
                .iter()
                .map(|l| {
                    map[l.generator()].map(|g| if l.is_inverse() { Letter::inv(g) } else { Letter::gen(g) })
                })
                .collect();
            if let Some(letters) = letters {
                p.add_relator(Word::new(letters)).expect("renumbered letters are valid");
            }
        }
        p
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        w.display_with(&self.names)
    }
}

impl fmt::Display for Presentation {
    /// Writes the presentation in the DSL accepted by [`parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Runs of equal kind keep generator indices stable on re-parse.
        let mut start = 0;
        while start < self.ngens() {
            let kind = self.involutive[start];
            let mut end = start;
            while end < self.ngens() && self.involutive[end] == kind {
                end += 1;
            }
            let keyword = if kind { "gens" } else { "free" };
            writeln!(f, "{} {};", keyword, self.names[start..end].join(" "))?;
            start = end;
        }
        for r in self.extra_relators() {
            let (base, k) = r.primitive_root();
            if k > 1 {
                writeln!(f, "rel ({})^{};", self.display_word(&base), k)?;
            } else {
                writeln!(f, "rel {};", self.display_word(r))?;
            }
        }
        for (name, words) in &self.subgroups {
            let items: Vec<String> = words.iter().map(|w| self.display_word(w).to_string()).collect();
            writeln!(f, "sub {} = {};", name, items.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn default_names(ngens: usize) -> Vec<String> {
    if ngens <= 26 {
        (0..ngens).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..ngens).map(|i| format!("g{i}")).collect()
    }
}

/// Shape of the invariant sublattice of a toroidal `{3,3,4,3}` quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// `(s,0,0,0)`
    Single,
    /// `(s,s,0,0)`
    Double,
}

/// Toroidal parameter vector `(s,0,0,0)` or `(s,s,0,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToroidalType {
    pub s: u32,
    pub shape: Shape,
}

impl ToroidalType {
    pub fn new(s: u32, shape: Shape) -> Result<Self, PresentationError> {
        if s < 2 {
            return Err(PresentationError::InvalidToroidal(s));
        }
        Ok(ToroidalType { s, shape })
    }

    pub fn single(s: u32) -> Self {
        ToroidalType::new(s, Shape::Single).expect("s >= 2")
    }

    pub fn double(s: u32) -> Self {
        ToroidalType::new(s, Shape::Double).expect("s >= 2")
    }

    /// Parameter vector notation, e.g. `(2,2,0,0)`.
    pub fn vector(&self) -> String {
        match self.shape {
            Shape::Single => format!("({},0,0,0)", self.s),
            Shape::Double => format!("({},{},0,0)", self.s, self.s),
        }
    }

    /// Order of the rank-5 group `[3,3,4,3]` with this type.
    ///
    /// The translation subgroup is `s⁴` for `(s,0,0,0)` and `s² × (2s)²` for
    /// `(s,s,0,0)`; the point group is F4 of order 1152.
    pub fn group_order(&self) -> u64 {
        let s = self.s as u64;
        match self.shape {
            Shape::Single => 1152 * s.pow(4),
            Shape::Double => 1152 * s * s * (2 * s) * (2 * s),
        }
    }
}

impl fmt::Display for ToroidalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = match self.shape {
            Shape::Single => "single",
            Shape::Double => "double",
        };
        write!(f, "{}:{}", self.s, shape)
    }
}

impl FromStr for ToroidalType {
    type Err = PresentationError;

    /// Accepts `3:single`, `2:double`, and the packed vector forms `3000`, `2200`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || PresentationError::BadToroidalLiteral(text.to_string());
        let t = text.trim();
        if let Some((s, shape)) = t.split_once(':') {
            let s: u32 = s.trim().parse().map_err(|_| bad())?;
            let shape = match shape.trim() {
                "single" | "s" => Shape::Single,
                "double" | "d" => Shape::Double,
                _ => return Err(bad()),
            };
            return ToroidalType::new(s, shape);
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = if inner.contains(',') {
            inner.split(',').map(str::trim).collect()
        } else if inner.len() == 4 && inner.bytes().all(|b| b.is_ascii_digit()) {
            (0..4).map(|i| &inner[i..i + 1]).collect()
        } else {
            return Err(bad());
        };
        if parts.len() != 4 || parts[2] != "0" || parts[3] != "0" {
            return Err(bad());
        }
        let s: u32 = parts[0].parse().map_err(|_| bad())?;
        match parts[1] {
            "0" => ToroidalType::new(s, Shape::Single),
            x if x.parse::<u32>().ok() == Some(s) => ToroidalType::new(s, Shape::Double),
            _ => Err(bad()),
        }
    }
}

/// Substitution of words for generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMap {
    pub images: Vec<Option<Word>>,
}

impl GeneratorMap {
    pub fn new(images: Vec<Word>) -> Self {
        GeneratorMap { images: images.into_iter().map(Some).collect() }
    }

    pub fn identity(ngens: usize) -> Self {
        GeneratorMap::new((0..ngens).map(|g| Word::gens(&[g])).collect())
    }

    /// Validates every image against the target presentation.
    pub fn check(&self, target: &Presentation) -> Result<(), PresentationError> {
        self.images.iter().flatten().try_for_each(|w| target.check_word(w))
    }
}

/// Letterwise substitution followed by free reduction in the target alphabet.
pub fn apply_map(w: &Word, m: &GeneratorMap, target_involutive: &[bool]) -> Result<Word, PresentationError> {
    let mut out = Word::empty();
    for l in w.iter() {
        let image = m
            .images
            .get(l.generator())
            .and_then(Option::as_ref)
            .ok_or(PresentationError::MissingImage(l.generator()))?;
        if l.is_inverse() {
            out = out.concat(&image.inverse());
        } else {
            out = out.concat(image);
        }
    }
    Ok(free_reduce(&out, target_involutive))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toroidal_literals() {
        assert_eq!("3:single".parse::<ToroidalType>().unwrap(), ToroidalType::single(3));
        assert_eq!("2200".parse::<ToroidalType>().unwrap(), ToroidalType::double(2));
        assert_eq!("(6,6,0,0)".parse::<ToroidalType>().unwrap(), ToroidalType::double(6));
        assert_eq!("3000".parse::<ToroidalType>().unwrap(), ToroidalType::single(3));
        assert!("1:single".parse::<ToroidalType>().is_err());
        assert!("2300".parse::<ToroidalType>().is_err());
        assert_eq!(ToroidalType::double(2).vector(), "(2,2,0,0)");
    }

    #[test]
    fn toroidal_orders() {
        assert_eq!(ToroidalType::single(2).group_order(), 18432);
        assert_eq!(ToroidalType::single(3).group_order(), 93312);
        assert_eq!(ToroidalType::double(2).group_order(), 73728);
    }

    #[test]
    fn involution_relators_are_explicit() {
        let p = Presentation::involutions(3);
        assert_eq!(p.relators().len(), 3);
        assert!(p.relators().iter().all(|r| p.is_involution_relator(r)));
        assert_eq!(p.extra_relators().count(), 0);
    }

    #[test]
    fn invalid_letters_are_rejected() {
        let mut p = Presentation::involutions(2);
        let err = p.add_relator(Word::gens(&[0, 5])).unwrap_err();
        assert_eq!(err, PresentationError::InvalidLetter { gen: 5, ngens: 2 });
    }

    #[test]
    fn identity_map_is_identity() {
        let inv = [true; 4];
        let w = Word::gens(&[0, 1, 2, 3, 1]);
        assert_eq!(apply_map(&w, &GeneratorMap::identity(4), &inv).unwrap(), w);
    }

    #[test]
    fn missing_image_is_an_error() {
        let m = GeneratorMap { images: vec![Some(Word::empty()), None] };
        assert_eq!(apply_map(&Word::gens(&[1]), &m, &[true]), Err(PresentationError::MissingImage(1)));
    }

    #[test]
    fn restriction_keeps_internal_relators() {
        let p = coxeter_presentation(&[3, 4, 3]).unwrap();
        let r = p.restrict(&[1, 2, 3]);
        assert_eq!(r.ngens(), 3);
        assert_eq!(r.relators(), coxeter_presentation(&[4, 3]).unwrap().relators());
    }
}
