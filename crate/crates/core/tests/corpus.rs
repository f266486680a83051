use coxeter_tc::enumerator::group_order;
use coxeter_tc::enumerator::EnumerationLimits;
use coxeter_tc::permgroup::parse_perm_generators;
use coxeter_tc::presentation::{coxeter_presentation, locally_toroidal_presentation, parse, Presentation, ToroidalType, Word, FACET, VERTEX};

fn load(name: &str) -> Presentation {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn same(a: &Presentation, b: &Presentation) {
    assert_eq!(a.relators(), b.relators());
    for sub in [FACET, VERTEX] {
        assert_eq!(a.subgroup(sub).unwrap(), b.subgroup(sub).unwrap());
    }
}

#[test]
fn locally_toroidal_files_match_builders() {
    same(&load("gamma.cox"), &locally_toroidal_presentation(ToroidalType::double(2), Some(ToroidalType::single(3))));
    same(&load("s2000.cox"), &locally_toroidal_presentation(ToroidalType::single(2), None));
}

#[test]
fn centre_file() {
    let mut p = coxeter_presentation(&[3, 3, 4, 3, 3]).unwrap();
    p.add_relator(Word::gens(&[1, 2, 3, 4]).pow(6)).unwrap();
    assert_eq!(load("centre.cox").relators(), p.relators());
}

#[test]
fn f4_file() {
    let p = load("f4.cox");
    assert_eq!(p, coxeter_presentation(&[3, 4, 3]).unwrap());
    assert_eq!(group_order(&p, &EnumerationLimits::default()).unwrap(), 1152);
}

#[test]
fn psi_listing() {
    let text = std::fs::read_to_string(format!("{}/data/psi.perm", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let (degree, gens) = parse_perm_generators(&text).unwrap();
    assert_eq!(degree, 4);
    let names: Vec<&str> = gens.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["a", "b", "c", "d", "e", "f"]);
    assert!(gens[3..].iter().all(|(_, p)| p.is_identity()));
}

#[test]
fn base_files_match_builders() {
    use coxeter_tc::presentation::toroidal_base_presentation;
    for (file, t) in [("base2000.cox", ToroidalType::single(2)), ("base3000.cox", ToroidalType::single(3)), ("base2200.cox", ToroidalType::double(2))] {
        same(&load(file), &toroidal_base_presentation(t));
    }
}
