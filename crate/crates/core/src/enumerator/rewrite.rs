//! Reidemeister–Schreier rewriting.
//!
//! Schreier generators are `s(c, g) = rep(c) · g · rep(c·g)⁻¹`, one per coset
//! and generator, minus the transversal edges. For an involutive `g` the
//! generators `s(c, g)` and `s(c·g, g)` are mutually inverse, so only the one
//! with the smaller coset is kept; when `c·g = c` it is itself an involution.
//! The rewritten relators are then simplified by eliminating generators that
//! occur in relators of length one or two.

use crate::presentation::{cyclic_reduce, free_reduce, Letter, Presentation, Word};

use super::{CosetTable, EnumerationError};

/// A presentation of the subgroup `H` of index `t.index()`, together with
/// what is needed to rewrite elements of `H` into it.
#[derive(Clone, Debug)]
pub struct SchreierPresentation {
    pub presentation: Presentation,
    /// Each new generator as a word in the original generators.
    pub generators: Vec<Word>,
    table: CosetTable,
    /// `edge[c * ngens + g]`: the word in new generators for `s(c, g)`.
    edge: Vec<Word>,
}

impl SchreierPresentation {
    /// Rewrites a word of the parent group that lies in `H`; `None` otherwise.
    pub fn rewrite(&self, w: &Word) -> Option<Word> {
        let ngens = self.table.ngens();
        if w.iter().any(|l| l.generator() >= ngens) {
            return None;
        }
        let mut out = Word::empty();
        let mut c = 0usize;
        for l in w.iter() {
            let g = l.generator();
            if l.is_inverse() && !self.table.involutive()[g] {
                let d = self.table.act(c, l);
                out = out.concat(&self.edge[d * ngens + g].inverse());
                c = d;
            } else {
                out = out.concat(&self.edge[c * ngens + g]);
                c = self.table.act(c, Letter::gen(g));
            }
        }
        (c == 0).then(|| free_reduce(&out, self.presentation.involutive()))
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }
}

/// Working alphabet entry: `Some(w)` once the generator has been eliminated.
struct Alphabet {
    involutive: Vec<bool>,
    elim: Vec<Option<Word>>,
}

impl Alphabet {
    fn expand(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for l in w.iter() {
            match &self.elim[l.generator()] {
                None => out.push(l),
                Some(sub) => {
                    let e = self.expand(sub);
                    out = out.concat(&if l.is_inverse() { e.inverse() } else { e });
                }
            }
        }
        free_reduce(&out, &self.involutive)
    }
}

pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable) -> Result<SchreierPresentation, EnumerationError> {
    if p.involutive() != t.involutive() {
        return Err(EnumerationError::Inconsistent("table was built for another presentation".into()));
    }
    let t = t.standardize();
    let ngens = t.ngens();
    let n = t.index();
    let reps = t.representatives();
    let parent = t.transversal();

    // Number the Schreier generators.
    let mut edge_letter: Vec<Option<Letter>> = vec![None; n * ngens];
    let mut gen_words: Vec<Word> = Vec::new();
    let mut involutive: Vec<bool> = Vec::new();
    for c in 0..n {
        for g in 0..ngens {
            let d = t.act(c, Letter::gen(g));
            let back = if t.involutive()[g] { Letter::gen(g) } else { Letter::inv(g) };
            let tree = parent[d] == Some((c, Letter::gen(g))) || parent[c] == Some((d, back));
            if tree {
                continue;
            }
            if t.involutive()[g] && d < c {
                let k = edge_letter[d * ngens + g].expect("numbered earlier");
                edge_letter[c * ngens + g] = Some(k.inverse());
                continue;
            }
            let k = gen_words.len();
            edge_letter[c * ngens + g] = Some(Letter::gen(k));
            let w = reps[c].concat(&Word::gens(&[g])).concat(&reps[d].inverse());
            gen_words.push(free_reduce(&w, p.involutive()));
            involutive.push(t.involutive()[g] && d == c);
        }
    }

    let rewrite_raw = |w: &Word, start: usize| -> (Word, usize) {
        let mut out = Word::empty();
        let mut c = start;
        for l in w.iter() {
            let g = l.generator();
            if l.is_inverse() && !t.involutive()[g] {
                let d = t.act(c, l);
                if let Some(x) = edge_letter[d * ngens + g] {
                    out.push(x.inverse());
                }
                c = d;
            } else {
                if let Some(x) = edge_letter[c * ngens + g] {
                    out.push(x);
                }
                c = t.act(c, Letter::gen(g));
            }
        }
        (out, c)
    };

    let mut relators: Vec<Word> = Vec::new();
    for r in p.relators() {
        for c in 0..n {
            let (w, end) = rewrite_raw(r, c);
            debug_assert_eq!(end, c);
            relators.push(w);
        }
    }

    let mut alpha = Alphabet { elim: vec![None; gen_words.len()], involutive };
    eliminate(&mut alpha, &mut relators);

    let alive: Vec<usize> = (0..alpha.elim.len()).filter(|&g| alpha.elim[g].is_none()).collect();
    let mut renumber = vec![usize::MAX; alpha.elim.len()];
    for (k, &g) in alive.iter().enumerate() {
        renumber[g] = k;
    }
    let relabel = |w: &Word| -> Word {
        Word::new(
            w.iter()
                .map(|l| {
                    let k = renumber[l.generator()];
                    if l.is_inverse() { Letter::inv(k) } else { Letter::gen(k) }
                })
                .collect(),
        )
    };

    let names = (1..=alive.len()).map(|k| format!("x{k}")).collect();
    let inv_flags: Vec<bool> = alive.iter().map(|&g| alpha.involutive[g]).collect();
    let mut presentation = Presentation::new(names, inv_flags);
    relators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for r in &relators {
        presentation.add_relator(relabel(r))?;
    }

    let edge = (0..n * ngens)
        .map(|k| match edge_letter[k] {
            None => Word::empty(),
            Some(l) => relabel(&alpha.expand(&Word::letter(l))),
        })
        .collect();
    let generators = alive.iter().map(|&g| gen_words[g].clone()).collect();
    Ok(SchreierPresentation { presentation, generators, table: t, edge })
}

/// Tietze eliminations driven by relators of length one and two.
fn eliminate(alpha: &mut Alphabet, relators: &mut Vec<Word>) {
    loop {
        for r in relators.iter_mut() {
            *r = cyclic_reduce(r, &alpha.involutive);
        }
        relators.retain(|r| !r.is_empty());
        relators.sort();
        relators.dedup();

        let mut step: Option<(usize, Word)> = None;
        for r in relators.iter() {
            let l = r.letters();
            match l.len() {
                1 => {
                    step = Some((l[0].generator(), Word::empty()));
                    break;
                }
                2 if l[0].generator() == l[1].generator() => {
                    // x² = 1 with x not yet flagged involutive.
                    alpha.involutive[l[0].generator()] = true;
                }
                2 => {
                    // u v = 1, so v = u⁻¹; eliminate the later generator.
                    let (u, v) = if l[0].generator() < l[1].generator() { (l[0], l[1]) } else { (l[1], l[0]) };
                    let sub = if v.is_inverse() { Word::letter(u) } else { Word::letter(u.inverse()) };
                    step = Some((v.generator(), sub));
                    break;
                }
                _ => {}
            }
        }
        let Some((g, sub)) = step else {
            if relators.iter().all(|r| r.len() > 2) {
                return;
            }
            continue;
        };
        if alpha.involutive[g] && !sub.is_empty() {
            relators.push(sub.pow(2));
        }
        alpha.elim[g] = Some(sub.clone());
        for r in relators.iter_mut() {
            if r.iter().any(|l| l.generator() == g) {
                let mut out = Word::empty();
                for l in r.iter() {
                    if l.generator() == g {
                        out = out.concat(&if l.is_inverse() { sub.inverse() } else { sub.clone() });
                    } else {
                        out.push(l);
                    }
                }
                *r = out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{enumerate, enumerate_named, group_order, EnumerationLimits};
    use crate::presentation::{coxeter_presentation, locally_toroidal_presentation, parse, ToroidalType, VERTEX};

    fn lim() -> EnumerationLimits {
        EnumerationLimits::with_max(1 << 20)
    }

    #[test]
    fn dihedral_index_two() {
        let p = coxeter_presentation(&[4]).unwrap();
        let t = enumerate(&p, &[Word::gens(&[0, 1])], &lim()).unwrap();
        assert_eq!(t.index(), 2);
        let rs = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(group_order(&rs.presentation, &lim()).unwrap(), 4);
    }

    #[test]
    fn trivial_subgroup_index_one() {
        let p = coxeter_presentation(&[3, 4, 3]).unwrap();
        let t = enumerate(&p, &[Word::gens(&[0]), Word::gens(&[1]), Word::gens(&[2]), Word::gens(&[3])], &lim()).unwrap();
        assert_eq!(t.index(), 1);
        let rs = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(group_order(&rs.presentation, &lim()).unwrap(), 1152);
    }

    #[test]
    fn free_generator_subgroup() {
        let p = parse("free x; gens y; rel x^3; rel (x y)^3;").unwrap();
        let t = enumerate(&p, &[Word::gens(&[0])], &lim()).unwrap();
        let rs = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(group_order(&rs.presentation, &lim()).unwrap(), 3);
    }

    #[test]
    fn generators_lie_in_subgroup_and_rewrite_back() {
        let p = coxeter_presentation(&[3, 4, 3]).unwrap();
        let sub = vec![Word::gens(&[1]), Word::gens(&[2]), Word::gens(&[3])];
        let t = enumerate(&p, &sub, &lim()).unwrap();
        let rs = reidemeister_schreier(&p, &t).unwrap();
        for w in &rs.generators {
            assert_eq!(t.trace(0, w), 0);
        }
        assert!(rs.rewrite(&Word::gens(&[0])).is_none());
        let r = rs.rewrite(&Word::gens(&[1, 2, 3])).unwrap();
        assert!(!r.is_empty());
    }

    #[test]
    fn index_multiplicativity() {
        // K ≤ H ≤ G with G = [3,4,3], H = ⟨b,c,d⟩, K = ⟨b,c⟩ and ⟨c,d⟩ variants.
        let p = coxeter_presentation(&[3, 4, 3]).unwrap();
        let h = vec![Word::gens(&[1]), Word::gens(&[2]), Word::gens(&[3])];
        let th = enumerate(&p, &h, &lim()).unwrap();
        let rs = reidemeister_schreier(&p, &th).unwrap();
        for k in [vec![Word::gens(&[1]), Word::gens(&[2])], vec![Word::gens(&[2, 3])], vec![Word::gens(&[1, 3])]] {
            let gk = enumerate(&p, &k, &lim()).unwrap().index();
            let kh: Vec<Word> = k.iter().map(|w| rs.rewrite(w).unwrap()).collect();
            let hk = enumerate(&rs.presentation, &kh, &lim()).unwrap().index();
            assert_eq!(gk, th.index() * hk);
        }
    }

    #[test]
    fn vertex_subgroup_order() {
        let p = locally_toroidal_presentation(ToroidalType::single(2), None);
        let t = enumerate_named(&p, VERTEX, &lim()).unwrap();
        assert_eq!(t.index(), 32);
        let rs = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(group_order(&rs.presentation, &lim()).unwrap(), 2359296 / 32);
    }
}
