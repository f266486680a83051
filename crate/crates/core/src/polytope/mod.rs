//! String C-group checks, vertex and facet statistics, toroidal type
//! identification and the mix construction.

mod table;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerator::{enumerate, enumerate_named, CosetTable, EnumerationError, EnumerationLimits};
use crate::permgroup::{intersection_order_on_base, Perm, PermError, PermGroup, StabChain};
use crate::presentation::{toroidal_probe_words_on, Presentation, PresentationError, Shape, Side, ToroidalType, Word, FACET, VERTEX};

pub use table::{known_rows, table1_row, KnownRow, Table1Entry};

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("element orders ({k1}, {k2}) match neither toroidal family")]
    UnrecognizedType { k1: String, k2: String },
    #[error("generator counts differ: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("subgroup `{0}` is not generated by single generators")]
    NotParabolic(String),
}

/// A pair of generator subsets violating `G_I ∩ G_J = G_{I∩J}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IpWitness {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    #[serde(serialize_with = "as_string")]
    pub intersection: BigUint,
    #[serde(serialize_with = "as_string")]
    pub expected: BigUint,
}

#[derive(Clone, Debug, Serialize)]
pub struct IpResult {
    pub holds: bool,
    pub pairs_checked: usize,
    pub witness: Option<IpWitness>,
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Checks the intersection property on every pair of generator subsets.
///
/// Each `|G_I ∩ G_J|` is counted by running through the smaller of the two
/// parabolics, so `budget` bounds the order of that smaller group.
pub fn verify_string_c_group(g: &PermGroup, budget: u64) -> Result<IpResult, PolytopeError> {
    let r = g.generators().len();
    assert!(r <= 16, "rank above 16");
    let base = g.chain().base();
    let chains: Vec<StabChain> = (0u32..1 << r)
        .into_par_iter()
        .map(|mask| {
            let gens: Vec<Perm> = members(mask).iter().map(|&i| g.generators()[i].clone()).collect();
            StabChain::with_base(g.degree(), &gens, &base)
        })
        .collect();
    let orders: Vec<BigUint> = chains.iter().map(StabChain::order).collect();
    let mut pairs = Vec::new();
    for i in 0u32..1 << r {
        for j in i + 1..1 << r {
            let m = i & j;
            if m == i || m == j {
                continue;
            }
            pairs.push((i, j));
        }
    }
    let results: Vec<Result<Option<IpWitness>, PermError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let expected = &orders[(i & j) as usize];
            if expected == std::cmp::min(&orders[i as usize], &orders[j as usize]) {
                return Ok(None);
            }
            let got = intersection_order_on_base(&chains[i as usize], &chains[j as usize], budget)?;
            Ok((&got != expected).then(|| IpWitness {
                i: members(i),
                j: members(j),
                intersection: got,
                expected: expected.clone(),
            }))
        })
        .collect();
    let mut witness = None;
    for res in results {
        if let Some(w) = res? {
            witness = Some(w);
            break;
        }
    }
    Ok(IpResult { holds: witness.is_none(), pairs_checked: pairs.len(), witness })
}

/// Toroidal type from the orders of `aστ` and `aστσ`, with the letters
/// `a..e` played by the generators at `roles`.
pub fn identify_toroidal_type_on(g: &PermGroup, roles: [usize; 5]) -> Result<ToroidalType, PolytopeError> {
    let (ast, asts) = toroidal_probe_words_on(roles);
    let k1 = g.element_order(&ast)?;
    let k2 = g.element_order(&asts)?;
    let unrecognized = || PolytopeError::UnrecognizedType { k1: k1.to_string(), k2: k2.to_string() };
    let (a, b) = (k1.to_u32().ok_or_else(unrecognized)?, k2.to_u32().ok_or_else(unrecognized)?);
    if a == 2 * b && b >= 2 {
        Ok(ToroidalType::single(b))
    } else if a == b && a % 2 == 0 && a >= 4 {
        Ok(ToroidalType::double(a / 2))
    } else {
        Err(unrecognized())
    }
}

/// Facet type for `Side::Left` (letters `a..e`), vertex-figure type for
/// `Side::Right` (letters `f..b`).
pub fn identify_toroidal_type(g: &PermGroup, side: Side) -> Result<ToroidalType, PolytopeError> {
    identify_toroidal_type_on(g, side.roles())
}

/// Groups acting on the disjoint union of their point sets, generator `i`
/// acting as the `i`-th generator of each.
pub fn disjoint_union(groups: &[&PermGroup]) -> Result<PermGroup, PolytopeError> {
    let r = groups.first().map(|g| g.generators().len()).unwrap_or(0);
    if let Some(g) = groups.iter().find(|g| g.generators().len() != r) {
        return Err(PolytopeError::ArityMismatch(r, g.generators().len()));
    }
    let degree: usize = groups.iter().map(|g| g.degree()).sum();
    let gens = (0..r)
        .map(|i| {
            let mut images = Vec::with_capacity(degree);
            let mut offset = 0u32;
            for g in groups {
                images.extend(g.generators()[i].images().iter().map(|&x| x + offset));
                offset += g.degree() as u32;
            }
            Perm::from_images(images).expect("union of permutations")
        })
        .collect();
    Ok(PermGroup::new(degree, gens))
}

/// The mix `⟨a₁b₁, …, a_r b_r⟩ ≤ A × B`.
pub fn mix_groups(a: &PermGroup, b: &PermGroup) -> Result<PermGroup, PolytopeError> {
    disjoint_union(&[a, b])
}

/// Type of the mix of two `[3,3,4,3]` toroidal groups.
pub fn mix_toroidal(s: ToroidalType, t: ToroidalType) -> ToroidalType {
    let l = s.s.lcm(&t.s);
    let double = match (s.shape, t.shape) {
        (Shape::Double, Shape::Double) => true,
        (Shape::Double, Shape::Single) => 2 * l == (2 * s.s).lcm(&t.s),
        (Shape::Single, Shape::Double) => 2 * l == (2 * t.s).lcm(&s.s),
        (Shape::Single, Shape::Single) => false,
    };
    if double {
        ToroidalType::double(l)
    } else {
        ToroidalType::single(l)
    }
}

/// Permutation action on the cosets of several tables at once.
pub fn coset_union_rep(tables: &[&CosetTable]) -> Result<PermGroup, PolytopeError> {
    let reps: Vec<PermGroup> = tables.iter().map(|t| t.permutation_rep()).collect();
    disjoint_union(&reps.iter().collect::<Vec<_>>())
}

/// Generator indices of a subgroup listed as single generators.
pub fn parabolic_generators(p: &Presentation, name: &str) -> Result<Vec<usize>, PolytopeError> {
    p.subgroup(name)?
        .iter()
        .map(|w| match w.letters() {
            [l] => Ok(l.generator()),
            _ => Err(PolytopeError::NotParabolic(name.to_string())),
        })
        .collect()
}

/// A faithful permutation representation of a finite group of known order,
/// built from coset actions on maximal parabolics, largest first.
pub fn faithful_parabolic_rep(p: &Presentation, order: &BigUint, limits: &EnumerationLimits) -> Result<Option<PermGroup>, PolytopeError> {
    let r = p.ngens();
    let mut tables = Vec::new();
    for skip in 0..r {
        let sub: Vec<Word> = (0..r).filter(|&g| g != skip).map(|g| Word::gens(&[g])).collect();
        match enumerate(p, &sub, limits) {
            Ok(t) => tables.push(t),
            Err(EnumerationError::CosetLimitExceeded { .. }) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    tables.sort_by_key(|t| t.index());
    let mut used: Vec<&CosetTable> = Vec::new();
    for t in &tables {
        used.push(t);
        let g = coset_union_rep(&used)?;
        if &g.order() == order {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub(crate) fn as_string<S: Serializer, T: ToString>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn opt_string<S: Serializer, T: ToString>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn type_or_unidentified<S: Serializer>(x: &Option<ToroidalType>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(t) => s.serialize_str(&t.to_string()),
        None => s.serialize_str("unidentified"),
    }
}

/// Counts and orders for a rank-6 presentation with `FACET` and `VERTEX`.
#[derive(Clone, Debug, Serialize)]
pub struct PolytopeReport {
    pub rank: usize,
    pub v: usize,
    pub f: usize,
    /// Common value of the two products when they agree, else the smaller.
    #[serde(serialize_with = "as_string")]
    pub group_order: BigUint,
    /// Order of the abstract facet group (restricted presentation), if finite
    /// within the parabolic cap.
    pub facet_parabolic_order: Option<u64>,
    pub vertex_parabolic_order: Option<u64>,
    #[serde(serialize_with = "opt_string")]
    pub order_via_facets: Option<BigUint>,
    #[serde(serialize_with = "opt_string")]
    pub order_via_vertices: Option<BigUint>,
    pub product_law_holds: bool,
    #[serde(serialize_with = "type_or_unidentified")]
    pub facet_type: Option<ToroidalType>,
    #[serde(serialize_with = "type_or_unidentified")]
    pub vertex_type: Option<ToroidalType>,
    /// Degree of the action on facet and vertex cosets together, when its
    /// stabilizer chain confirmed it faithful.
    pub faithful_degree: Option<usize>,
    pub ip_verified: bool,
}

#[derive(Clone, Debug)]
pub struct StatsOptions {
    pub limits: EnumerationLimits,
    /// Cap for enumerating the abstract facet and vertex groups.
    pub parabolic_cap: usize,
    /// Largest coset-action degree for which faithfulness and the
    /// intersection property are checked.
    pub ip_max_degree: usize,
    pub ip_budget: u64,
}

impl Default for StatsOptions {
    fn default() -> Self {
        StatsOptions { limits: EnumerationLimits::default(), parabolic_cap: 1 << 20, ip_max_degree: 512, ip_budget: 1_000_000 }
    }
}

fn abstract_order(p: &Presentation, gens: &[usize], cap: usize) -> Result<Option<u64>, PolytopeError> {
    match enumerate(&p.restrict(gens), &[], &EnumerationLimits::with_max(cap)) {
        Ok(t) => Ok(Some(t.index() as u64)),
        Err(EnumerationError::CosetLimitExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn polytope_stats(p: &Presentation, opts: &StatsOptions) -> Result<PolytopeReport, PolytopeError> {
    let tf = enumerate_named(p, FACET, &opts.limits)?;
    let tv = enumerate_named(p, VERTEX, &opts.limits)?;
    let (f, v) = (tf.index(), tv.index());
    let facet_parabolic_order = abstract_order(p, &parabolic_generators(p, FACET)?, opts.parabolic_cap)?;
    let vertex_parabolic_order = abstract_order(p, &parabolic_generators(p, VERTEX)?, opts.parabolic_cap)?;
    let order_via_facets = facet_parabolic_order.map(|o| BigUint::from(f) * o);
    let order_via_vertices = vertex_parabolic_order.map(|o| BigUint::from(v) * o);
    let (group_order, product_law_holds) = match (&order_via_facets, &order_via_vertices) {
        (Some(a), Some(b)) => (a.min(b).clone(), a == b),
        (Some(a), None) | (None, Some(a)) => (a.clone(), true),
        (None, None) => return Err(EnumerationError::CosetLimitExceeded { max_cosets: opts.parabolic_cap, live: 0, defined: 0 }.into()),
    };

    let g = coset_union_rep(&[&tf, &tv])?;
    let facet_type = identify_toroidal_type(&g, Side::Left).ok();
    let vertex_type = identify_toroidal_type(&g, Side::Right).ok();

    let mut faithful_degree = None;
    let mut ip_verified = false;
    if g.degree() <= opts.ip_max_degree && g.order() == group_order {
        faithful_degree = Some(g.degree());
        ip_verified = verify_string_c_group(&g, opts.ip_budget)?.holds;
    }
    Ok(PolytopeReport {
        rank: p.ngens(),
        v,
        f,
        group_order,
        facet_parabolic_order,
        vertex_parabolic_order,
        order_via_facets,
        order_via_vertices,
        product_law_holds,
        facet_type,
        vertex_type,
        faithful_degree,
        ip_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::group_order;
    use crate::presentation::{coxeter_presentation, locally_toroidal_presentation, toroidal_base_presentation};

    fn regular(p: &Presentation) -> PermGroup {
        enumerate(p, &[], &EnumerationLimits::with_max(1 << 20)).unwrap().permutation_rep()
    }

    #[test]
    fn dihedral_is_string_c_group() {
        let g = regular(&coxeter_presentation(&[4]).unwrap());
        let r = verify_string_c_group(&g, 1000).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn equal_generators_fail() {
        let t = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let u = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let g = PermGroup::new(3, vec![t.clone(), u, t]);
        let r = verify_string_c_group(&g, 1000).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert!(w.intersection > w.expected);
    }

    #[test]
    fn budget_is_enforced() {
        let g = regular(&coxeter_presentation(&[3, 4, 3]).unwrap());
        assert!(matches!(verify_string_c_group(&g, 3), Err(PolytopeError::Perm(PermError::BudgetExceeded(3)))));
    }

    #[test]
    fn f4_is_string_c_group() {
        let g = regular(&coxeter_presentation(&[3, 4, 3]).unwrap());
        assert!(verify_string_c_group(&g, 10_000).unwrap().holds);
    }

    #[test]
    fn identify_inverts_build() {
        for s in 2..=4u32 {
            for t in [ToroidalType::single(s), ToroidalType::double(s)] {
                let p = toroidal_base_presentation(t);
                let order = BigUint::from(t.group_order());
                let g = faithful_parabolic_rep(&p, &order, &EnumerationLimits::with_max(1 << 20)).unwrap().expect("faithful");
                assert_eq!(identify_toroidal_type(&g, Side::Left).unwrap(), t, "{t}");
            }
        }
    }

    #[test]
    fn unrecognized_orders() {
        let g = PermGroup::new(1, vec![Perm::identity(1); 5]);
        assert!(matches!(identify_toroidal_type(&g, Side::Left), Err(PolytopeError::UnrecognizedType { .. })));
    }

    #[test]
    fn mix_orders() {
        let a = regular(&coxeter_presentation(&[3]).unwrap());
        let b = regular(&coxeter_presentation(&[4]).unwrap());
        let trivial = PermGroup::new(1, vec![Perm::identity(1); 2]);
        assert_eq!(mix_groups(&a, &trivial).unwrap().order(), a.order());
        assert_eq!(mix_groups(&a, &b).unwrap().order(), mix_groups(&b, &a).unwrap().order());
        let ab = mix_groups(&a, &b).unwrap().order();
        // Dihedral groups mix to the dihedral group of order 2·lcm(3, 4).
        assert_eq!(ab, BigUint::from(24u32));
        assert_eq!(mix_groups(&a, &a).unwrap().order(), a.order());
        let c = regular(&coxeter_presentation(&[3, 3]).unwrap());
        assert!(matches!(mix_groups(&a, &c), Err(PolytopeError::ArityMismatch(2, 3))));
    }

    fn all_types(range: &[u32]) -> Vec<ToroidalType> {
        range.iter().flat_map(|&s| [ToroidalType::single(s), ToroidalType::double(s)]).collect()
    }

    #[test]
    fn mix_toroidal_cases() {
        assert_eq!(mix_toroidal(ToroidalType::single(3), ToroidalType::double(2)), ToroidalType::double(6));
        assert_eq!(mix_toroidal(ToroidalType::single(2), ToroidalType::single(3)), ToroidalType::single(6));
        assert_eq!(mix_toroidal(ToroidalType::double(4), ToroidalType::double(4)), ToroidalType::double(4));
        assert_eq!(mix_toroidal(ToroidalType::double(2), ToroidalType::single(2)), ToroidalType::double(2));
        assert_eq!(mix_toroidal(ToroidalType::double(2), ToroidalType::single(4)), ToroidalType::single(4));
    }

    #[test]
    fn mix_toroidal_matches_group_mix() {
        let limits = EnumerationLimits::with_max(1 << 20);
        let ts = all_types(&[2, 3]);
        let reps: Vec<PermGroup> = ts
            .iter()
            .map(|&t| {
                let order = BigUint::from(t.group_order());
                faithful_parabolic_rep(&toroidal_base_presentation(t), &order, &limits).unwrap().unwrap()
            })
            .collect();
        for (i, &a) in ts.iter().enumerate() {
            for (j, &b) in ts.iter().enumerate().skip(i) {
                let m = mix_groups(&reps[i], &reps[j]).unwrap();
                let expected = mix_toroidal(a, b);
                assert_eq!(identify_toroidal_type(&m, Side::Left).unwrap(), expected, "{a} {b}");
                assert_eq!(m.order(), BigUint::from(expected.group_order()), "{a} {b}");
            }
        }
    }

    #[test]
    fn mix_toroidal_laws() {
        let ts = all_types(&[2, 3, 4, 6]);
        for &a in &ts {
            assert_eq!(mix_toroidal(a, a), a);
            for &b in &ts {
                assert_eq!(mix_toroidal(a, b), mix_toroidal(b, a));
                for &c in &ts {
                    let l = mix_toroidal(mix_toroidal(a, b), c);
                    let r = mix_toroidal(a, mix_toroidal(b, c));
                    assert_eq!(l.s, r.s);
                    assert_eq!(l, r, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn stats_of_small_row() {
        let p = locally_toroidal_presentation(ToroidalType::single(2), Some(ToroidalType::single(2)));
        let r = polytope_stats(&p, &StatsOptions::default()).unwrap();
        assert_eq!(r.v, r.f);
        assert!(r.product_law_holds);
        assert_eq!(r.group_order, BigUint::from(r.f as u64 * 18432));
        assert_eq!(r.facet_type, Some(ToroidalType::single(2)));
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["group_order"].is_string());
        let order = group_order(&p, &EnumerationLimits::with_max(1 << 21)).unwrap();
        assert_eq!(BigUint::from(order), r.group_order);
    }
}
