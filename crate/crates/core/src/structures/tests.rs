use proptest::prelude::*;

use super::*;
use crate::algebra_core::{equal_mod_commutators, int};
use crate::report::Status;
use crate::sample;

fn e(q: &Quiver, s: &str) -> Elem {
    parse_elem(q, s).unwrap()
}

#[test]
fn standard_on_fixtures() {
    let q = sample::doubled_loop();
    let s = standard_hamiltonian(&q).unwrap();
    assert_eq!(s.p, e(&q, "D(t) D(t*)"));
    assert_eq!(s.moment, e(&q, "t t* - t* t"));

    let q = sample::doubled_two_vertex();
    let s = standard_hamiltonian(&q).unwrap();
    let comps = s.components().unwrap();
    assert_eq!(comps[0], e(&q, "a a*"));
    assert_eq!(comps[1], e(&q, "-a* a"));

    let q = Quiver::new(&["1"], &[]).unwrap().double().unwrap();
    let s = standard_hamiltonian(&q).unwrap();
    assert!(s.p.is_zero() && s.moment.is_zero());

    assert_eq!(standard_hamiltonian(&sample::loop_quiver()), Err(Error::NotDoubled));
}

#[test]
fn standard_passes_on_corpus() {
    for q in sample::corpus(3) {
        let q = q.double().unwrap();
        let s = standard_hamiltonian(&q).unwrap();
        assert_eq!(s.check_bivector().status, Status::Proved, "{:?}", q);
        assert_eq!(s.check_moment().status, Status::Proved, "{:?}", q);
    }
}

#[test]
fn one_pair_structure() {
    let s = one_pair_quasi();
    assert_eq!(s.check_bivector().status, Status::Proved);
    assert_eq!(s.check_moment().status, Status::Proved);
    assert_eq!(s.check_quasi_bracket().status, Status::Proved);
    let q = &s.quiver;
    // second form of P, modulo commutators
    let alt = (e(q, "1 + a* a").mul(&e(q, "D(a) D(a*)")) - e(q, "1 + a a*").mul(&e(q, "D(a*) D(a)"))).scale(&rat(1, 2));
    assert!(equal_mod_commutators(&s.p, &alt, q));
    let comps = s.components().unwrap();
    assert_eq!(comps[0], e(q, "e(1) + a a*"));
    assert_eq!(comps[1], e(q, "e(2) - a* inv(a) a"));
}

#[test]
fn standard_fails_quasi_check() {
    // a double Poisson bracket is not quasi-Poisson when the E^3 bracket is nonzero
    let s = standard_hamiltonian(&sample::doubled_two_vertex()).unwrap();
    assert_eq!(check_quasi_poisson(&s.bracket().unwrap()).status, Status::Fail);
    let zero = bracket(DoubleBracketTable::new(sample::doubled_loop()));
    assert_eq!(check_quasi_poisson(&zero).status, Status::Fail);
}

#[test]
fn general_quasi_on_fixtures() {
    let dl = sample::doubled_loop();
    let dp = sample::doubled_two_vertex();
    for q in [dl.clone(), dl.with_order(&["t*", "t"]).unwrap(), dp.clone(), dp.with_order(&["a*", "a"]).unwrap()] {
        let s = general_quasi(&q).unwrap();
        assert_eq!(s.check_bivector().status, Status::Proved, "{:?}", q.order());
        assert_eq!(s.check_moment().status, Status::Proved, "{:?}", q.order());
        assert_eq!(s.check_quasi_bracket().status, Status::Proved, "{:?}", q.order());
    }
    // the two orderings on the loop give different Φ
    let a = general_quasi(&dl).unwrap().moment;
    let b = general_quasi(&dl.with_order(&["t*", "t"]).unwrap()).unwrap().moment;
    assert_ne!(a, b);
}

#[test]
fn general_quasi_matches_one_pair() {
    let one = one_pair_quasi();
    for order in [["a", "a*"], ["a*", "a"]] {
        let s = general_quasi(&sample::doubled_two_vertex().with_order(&order).unwrap()).unwrap();
        assert!(equal_mod_commutators(&s.p, &one.p, &s.quiver), "{:?}", order);
        assert_eq!(s.moment, one.moment);
    }
}

#[test]
fn general_quasi_rejects_bad_input() {
    assert_eq!(general_quasi(&sample::loop_quiver()), Err(Error::NotDoubled));
}

#[test]
fn necklace_bracket_examples() {
    let q = sample::doubled_two_vertex();
    // {a a*, a* a}: insertion rule gives zero after closing up
    let b = bracket(standard_table(&q).unwrap());
    let direct = necklace(&b.single(&e(&q, "a a*"), &e(&q, "a* a")), &q);
    assert_eq!(necklace_bracket(&q, &e(&q, "a a*"), &e(&q, "a* a")).unwrap(), direct);
    assert!(necklace_bracket(&q, &e(&q, "a"), &e(&q, "a* a")).unwrap().is_zero());
    let l = sample::doubled_loop();
    assert!(necklace_bracket(&l, &e(&l, "t t*"), &e(&l, "e(1)")).unwrap().is_zero());
    // {t, t* t*} = 2 t* up to sign ε
    let r = necklace_bracket(&l, &e(&l, "t"), &e(&l, "t* t*")).unwrap();
    assert_eq!(r, necklace(&e(&l, "2 t*"), &l));
}

#[test]
fn relations() {
    let l = sample::doubled_loop();
    assert_eq!(preprojective_relation(&l, &[int(0)]).unwrap(), e(&l, "t t* - t* t"));
    let p = sample::doubled_two_vertex();
    assert_eq!(preprojective_relation(&p, &[int(1), int(-1)]).unwrap(), e(&p, "a a* - a* a - e(1) + e(2)"));
    let m = multiplicative_relation(&p, &unit_parameters(&p)).unwrap();
    let pq = p.with_all_inverted().unwrap();
    assert_eq!(m, general_quasi(&p).unwrap().moment - Elem::one(2));
    assert_eq!(m, e(&pq, "a a* - a* inv(a) a"));
    assert!(multiplicative_relation(&p, &[int(1), int(0)]).is_err());
}

#[test]
fn structure_file_round_trip() {
    for s in [one_pair_quasi(), general_quasi(&sample::doubled_loop().with_order(&["t*", "t"]).unwrap()).unwrap()] {
        let text = s.to_file().to_json();
        let back = HamiltonianStructure::from_file(&StructureFile::from_json(&text).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}

#[test]
fn relabeling_vertices_commutes_with_construction() {
    let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap().double().unwrap();
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let perm = [2, 0, 1];
    let r = q.relabel_vertices(&names, &perm);
    let s = general_quasi(&q).unwrap();
    let t = general_quasi(&r).unwrap();
    let move_word = |x: &Elem| x.map_words(|w| Elem::word(w.map_letters(|l| r.letter(l.kind, l.arrow as usize), |v| perm[v as usize] as u32)));
    assert_eq!(move_word(&s.p), t.p);
    assert_eq!(move_word(&s.moment), t.moment);
}

fn closed(q: &Quiver, seed: u64) -> Elem {
    let mut r = sample::rng(seed);
    Elem::word(sample::random_closed_word(q, &mut r, 4, &[Kind::Arrow]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn necklace_lie_algebra(seed in any::<u64>()) {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "2")]).unwrap().double().unwrap();
        let (x, y, z) = (closed(&q, seed), closed(&q, seed ^ 1), closed(&q, seed ^ 2));
        let br = |u: &Elem, v: &Elem| necklace_bracket(&q, u, v).unwrap();
        prop_assert!((br(&x, &y) + br(&y, &x)).is_zero());
        let jac = br(&x, &br(&y, &z)) + br(&y, &br(&z, &x)) + br(&z, &br(&x, &y));
        prop_assert!(necklace(&jac, &q).is_zero());
    }
}
