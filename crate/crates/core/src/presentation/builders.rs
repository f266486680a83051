use super::{conjugate, GeneratorMap, Presentation, PresentationError, Shape, ToroidalType, Word};

/// Name of the subgroup generated by all generators but the last.
pub const FACET: &str = "FACET";
/// Name of the subgroup generated by all generators but the first.
pub const VERTEX: &str = "VERTEX";

/// Appends the Coxeter relators of a string diagram on the listed generators.
fn add_string_relators(p: &mut Presentation, gens: &[usize], labels: &[u32]) -> Result<(), PresentationError> {
    debug_assert_eq!(gens.len(), labels.len() + 1);
    if let Some(&bad) = labels.iter().find(|&&k| k < 2) {
        return Err(PresentationError::InvalidLabel(bad));
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let k = if j == i + 1 { labels[i] } else { 2 };
            p.add_relator(Word::gens(&[gens[i], gens[j]]).pow(k as usize))?;
        }
    }
    Ok(())
}

/// Coxeter group of the Schläfli symbol `[k₁,…,k_{r−1}]` on generators `a, b, …`.
pub fn coxeter_presentation(labels: &[u32]) -> Result<Presentation, PresentationError> {
    let r = labels.len() + 1;
    let mut p = Presentation::involutions(r);
    add_string_relators(&mut p, &(0..r).collect::<Vec<_>>(), labels)?;
    Ok(p)
}

/// End of the `[3,3,4,3,3]` diagram a toroidal relator is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Facet end: letters `a,b,c,d,e`.
    Left,
    /// Vertex-figure end: mirrored letters `f,e,d,c,b`.
    Right,
}

impl Side {
    /// Generator indices playing the roles of `a,b,c,d,e` in the rank-6 alphabet.
    pub fn roles(self) -> [usize; 5] {
        match self {
            Side::Left => [0, 1, 2, 3, 4],
            Side::Right => [5, 4, 3, 2, 1],
        }
    }
}

/// `(σ, τ) = (d^{cb}, c^{de})` built from the given role letters `a..e`.
pub fn sigma_tau_on(roles: [usize; 5]) -> (Word, Word) {
    let [_, b, c, d, e] = roles;
    let inv = [true; 64];
    let sigma = conjugate(&Word::gens(&[d]), &Word::gens(&[c, b]), &inv);
    let tau = conjugate(&Word::gens(&[c]), &Word::gens(&[d, e]), &inv);
    (sigma, tau)
}

/// `(aστ, aστσ)` on the given role letters. Their orders identify a toroidal type.
pub fn toroidal_probe_words_on(roles: [usize; 5]) -> (Word, Word) {
    let (sigma, tau) = sigma_tau_on(roles);
    let inv = [true; 64];
    let ast = super::free_reduce(&Word::gens(&[roles[0]]).concat(&sigma).concat(&tau), &inv);
    let asts = super::free_reduce(&ast.concat(&sigma), &inv);
    (ast, asts)
}

pub fn toroidal_probe_words(side: Side) -> (Word, Word) {
    toroidal_probe_words_on(side.roles())
}

/// Base word and exponent of the toroidal relator: `(aστσ, s)` or `(aστ, 2s)`.
pub fn toroidal_relator_parts_on(t: ToroidalType, roles: [usize; 5]) -> (Word, usize) {
    let (ast, asts) = toroidal_probe_words_on(roles);
    match t.shape {
        Shape::Single => (asts, t.s as usize),
        Shape::Double => (ast, 2 * t.s as usize),
    }
}

pub fn toroidal_relator_on(t: ToroidalType, roles: [usize; 5]) -> Word {
    let (base, k) = toroidal_relator_parts_on(t, roles);
    base.pow(k)
}

/// Toroidal relator on the rank-6 alphabet `a..f`.
pub fn toroidal_relator(t: ToroidalType, side: Side) -> Word {
    toroidal_relator_on(t, side.roles())
}

/// The rank-5 quotient `[3,3,4,3]_t` on generators `a..e`.
///
/// Named subgroups: `FACET = ⟨a,b,c,d⟩`, `VERTEX = ⟨b,c,d,e⟩`.
pub fn toroidal_base_presentation(t: ToroidalType) -> Presentation {
    let mut p = coxeter_presentation(&[3, 3, 4, 3]).expect("valid labels");
    p.add_relator(toroidal_relator_on(t, Side::Left.roles())).expect("rank-5 letters");
    p.set_parabolic(FACET, &[0, 1, 2, 3]).expect("valid");
    p.set_parabolic(VERTEX, &[1, 2, 3, 4]).expect("valid");
    p
}

/// `[3,3,4,3,3]` with the facet relator for `s` and, optionally, the
/// vertex-figure relator for `t`.
///
/// Named subgroups: `FACET = ⟨a..e⟩`, `VERTEX = ⟨b..f⟩`.
pub fn locally_toroidal_presentation(s: ToroidalType, t: Option<ToroidalType>) -> Presentation {
    let mut p = coxeter_presentation(&[3, 3, 4, 3, 3]).expect("valid labels");
    p.add_relator(toroidal_relator(s, Side::Left)).expect("rank-6 letters");
    if let Some(t) = t {
        p.add_relator(toroidal_relator(t, Side::Right)).expect("rank-6 letters");
    }
    p.set_parabolic(FACET, &[0, 1, 2, 3, 4]).expect("valid");
    p.set_parabolic(VERTEX, &[1, 2, 3, 4, 5]).expect("valid");
    p
}

/// Generator index of node `pos` (0-based from the centre) on `arm` (0-based)
/// of `Y_{αβγ}`, or of the centre `a` when `pos` is `None`.
pub fn y_generator(arms: [usize; 3], arm: usize, pos: Option<usize>) -> usize {
    match pos {
        None => 0,
        Some(p) => {
            assert!(p < arms[arm], "arm {arm} has only {} nodes", arms[arm]);
            1 + arms[..arm].iter().sum::<usize>() + p
        }
    }
}

/// Star-shaped Coxeter diagram `Y_{αβγ}` with all edges labelled 3.
///
/// Generator order: `a`, then arm 1 (`b1, c1, d1, …`), arm 2, arm 3.
pub fn y_presentation(alpha: usize, beta: usize, gamma: usize, extra: &[Word]) -> Result<Presentation, PresentationError> {
    let arms = [alpha, beta, gamma];
    let n = 1 + alpha + beta + gamma;
    let mut names = vec!["a".to_string()];
    for (i, &len) in arms.iter().enumerate() {
        for pos in 0..len {
            let letter = (b'b' + pos as u8) as char;
            names.push(format!("{letter}{}", i + 1));
        }
    }
    let mut p = Presentation::new(names, vec![true; n]);
    let mut adjacent = vec![vec![false; n]; n];
    for (arm, &len) in arms.iter().enumerate() {
        let mut prev = 0;
        for pos in 0..len {
            let g = y_generator(arms, arm, Some(pos));
            adjacent[prev][g] = true;
            adjacent[g][prev] = true;
            prev = g;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let k = if adjacent[i][j] { 3 } else { 2 };
            p.add_relator(Word::gens(&[i, j]).pow(k))?;
        }
    }
    for w in extra {
        p.add_relator(w.clone())?;
    }
    Ok(p)
}

const Y332: [usize; 3] = [3, 3, 2];

fn y332(arm: usize, pos: usize) -> usize {
    y_generator(Y332, arm, Some(pos))
}

/// The three extra relators `[S, f₁₂, f₂₁]` turning `Y₃₃₂` into Fi22.
///
/// `S = (a b₁ c₁ a b₂ c₂ a b₃ c₃)^10`, `f_ij = (a b_i b_j b_k c_i c_j d_i)^9`.
pub fn fi22_relators() -> Vec<Word> {
    let (b, c, d) = (0, 1, 2);
    let s_base = Word::gens(&[0, y332(0, b), y332(0, c), 0, y332(1, b), y332(1, c), 0, y332(2, b), y332(2, c)]);
    let f = |i: usize, j: usize, k: usize| {
        Word::gens(&[0, y332(i, b), y332(j, b), y332(k, b), y332(i, c), y332(j, c), y332(i, d)]).pow(9)
    };
    vec![s_base.pow(10), f(0, 1, 2), f(1, 0, 2)]
}

/// The diagram automorphism of `Y₃₃₂` swapping the first two arms.
pub fn phi_map() -> GeneratorMap {
    let n = 1 + Y332.iter().sum::<usize>();
    let mut images: Vec<Word> = (0..n).map(|g| Word::gens(&[g])).collect();
    for pos in 0..3 {
        images[y332(0, pos)] = Word::gens(&[y332(1, pos)]);
        images[y332(1, pos)] = Word::gens(&[y332(0, pos)]);
    }
    GeneratorMap::new(images)
}

/// The six φ-fixed words generating a `[3,3,4,3,3]` quotient inside `Y₃₃₂`,
/// in string order `d₁d₂, c₁c₂, b₁b₂, a, b₃, c₃`.
pub fn twist_generators() -> Vec<Word> {
    vec![
        Word::gens(&[y332(0, 2), y332(1, 2)]),
        Word::gens(&[y332(0, 1), y332(1, 1)]),
        Word::gens(&[y332(0, 0), y332(1, 0)]),
        Word::gens(&[0]),
        Word::gens(&[y332(2, 0)]),
        Word::gens(&[y332(2, 1)]),
    ]
}

/// Map from the rank-6 alphabet `a..f` onto the `[3,3]` (S4) alphabet:
/// `a,b,c ↦` the three Coxeter generators, `d,e,f ↦ 1`.
pub fn psi_map() -> GeneratorMap {
    GeneratorMap::new(vec![
        Word::gens(&[0]),
        Word::gens(&[1]),
        Word::gens(&[2]),
        Word::empty(),
        Word::empty(),
        Word::empty(),
    ])
}

/// `(bcde)^6`: the longest element of the `[3,4,3]` parabolic `⟨b,c,d,e⟩`
/// (Coxeter number 12), which is central there.
pub fn f4_center_relator() -> Word {
    Word::gens(&[1, 2, 3, 4]).pow(6)
}
