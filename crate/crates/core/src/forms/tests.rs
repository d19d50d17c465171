use num_traits::One;
use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::algebra_core::{localize, necklace, parse_elem, parse_tensor, rat, Elem, Kind, Quiver, Tensor, Q};
use crate::brackets::{bracket, normalize_tensor, DoubleBracketTable};
use crate::polyvectors::{gauge_element, induced_table, schouten, PolyVector};
use crate::report::Status;
use crate::sample::{doubled_loop, doubled_two_vertex, form_kinds, loop_quiver, random_elem, random_field, random_form, rng};
use crate::structures::{one_pair_quiver, standard_table};

fn el(q: &Quiver, s: &str) -> Elem {
    parse_elem(q, s).unwrap()
}

fn tn(q: &Quiver, s: &str) -> Tensor {
    parse_tensor(q, s, 2).unwrap()
}

fn loop_bracket() -> crate::brackets::Bracket {
    bracket(DoubleBracketTable::new(loop_quiver()).with("t", "t", "t ⊗ 1 - 1 ⊗ t").unwrap())
}

fn quivers() -> Vec<Quiver> {
    vec![doubled_loop(), doubled_two_vertex(), one_pair_quiver()]
}

#[test]
fn differential_examples() {
    let q = doubled_loop();
    assert_eq!(differential(&q, &el(&q, "t t*")).unwrap(), el(&q, "d(t) t* + t d(t*)"));
    assert!(differential(&q, &el(&q, "d(t) d(t*)")).unwrap().is_zero());
    assert!(differential(&q, &el(&q, "e(1)")).unwrap().is_zero());
    assert!(differential(&q, &el(&q, "D(t)")).is_err());
}

#[test]
fn differential_of_inverse_letter() {
    let q = one_pair_quiver();
    let iota = el(&q, "inv(a)");
    let expect = el(&q, "- inv(a) d(a) a* inv(a) - inv(a) a d(a*) inv(a)");
    assert_eq!(differential(&q, &iota).unwrap(), localize(&expect, &q));
    // d(ι (e + a a*)) = d(e) = 0
    let prod = el(&q, "inv(a) + inv(a) a a*");
    assert!(differential(&q, &prod).unwrap().is_zero());
}

#[test]
fn contraction_on_generators() {
    let q = doubled_two_vertex();
    for a in 0..q.n_arrows() {
        let da = Elem::letter(q.letter(Kind::Differential, a));
        let d = Elem::letter(q.letter(Kind::Derivation, a));
        let t = double_contraction(&q, &d, &da).unwrap();
        assert_eq!(t, Tensor::pair(&Elem::idem(q.tail(a)), &Elem::idem(q.head(a))));
        assert!(double_contraction(&q, &d, &Elem::letter(q.letter(Kind::Arrow, a))).unwrap().is_zero());
    }
    assert!(double_contraction(&q, &el(&q, "D(a) D(a*)"), &el(&q, "d(a)")).is_err());
}

#[test]
fn contraction_of_standard_form() {
    // signs computed by hand from i then °: ı_{D(t)} ω = dt*, ı_{D(t*)} ω = -dt
    let q = doubled_loop();
    let w = standard_bisymplectic(&q).unwrap();
    assert_eq!(contraction(&q, &el(&q, "D(t)"), &w).unwrap(), el(&q, "d(t*)"));
    assert_eq!(contraction(&q, &el(&q, "D(t*)"), &w).unwrap(), el(&q, "- d(t)"));
    let q = doubled_two_vertex();
    let w = standard_bisymplectic(&q).unwrap();
    assert_eq!(contraction(&q, &el(&q, "D(a)"), &w).unwrap(), el(&q, "d(a*)"));
    assert_eq!(contraction(&q, &el(&q, "D(a*)"), &w).unwrap(), el(&q, "- d(a)"));
}

#[test]
fn lie_derivative_on_functions() {
    let q = doubled_loop();
    let d = el(&q, "t D(t*) t");
    let x = el(&q, "t*");
    assert_eq!(double_lie(&q, &d, &x).unwrap(), tn(&q, "t ⊗ t"));
    assert_eq!(double_lie(&q, &d, &el(&q, "d(t*)")).unwrap(), tn(&q, "d(t) ⊗ t + t ⊗ d(t)"));
}

#[test]
fn gauge_lie_derivative_kills_standard_form() {
    for q in quivers() {
        let w = standard_bisymplectic(&q).unwrap();
        for i in 0..q.n_vertices() {
            assert!(lie_derivative(&q, &gauge_element(&q, i).unwrap(), &w).unwrap().is_zero());
        }
    }
}

#[test]
fn koszul_examples() {
    let q = loop_quiver();
    let k = koszul(DoubleBracketTable::new(q.clone()).with("t", "t", "t ⊗ 1 - 1 ⊗ t").unwrap()).unwrap();
    assert_eq!(k.bracket(&el(&q, "d(t)"), &el(&q, "t")), tn(&q, "t ⊗ 1 - 1 ⊗ t"));
    assert_eq!(k.bracket(&el(&q, "t"), &el(&q, "d(t)")), tn(&q, "t ⊗ 1 - 1 ⊗ t"));
    assert_eq!(k.bracket(&el(&q, "d(t)"), &el(&q, "d(t)")), tn(&q, "d(t) ⊗ 1 - 1 ⊗ d(t)"));
    assert!(k.bracket(&el(&q, "t"), &el(&q, "t")).is_zero());
    assert!(koszul(crate::polyvectors::schouten(&q).table().clone()).is_err());
}

#[test]
fn koszul_of_poisson_bracket_is_poisson() {
    let q = loop_quiver();
    let k = koszul(DoubleBracketTable::new(q.clone()).with("t", "t", "t ⊗ 1 - 1 ⊗ t").unwrap()).unwrap();
    let mut r = rng(5);
    for _ in 0..10 {
        let xs: Vec<Elem> = (0..3).map(|_| random_elem(&q, &mut r, 2, 2, &form_kinds(&q))).collect();
        assert!(k.triple(&xs[0], &xs[1], &xs[2]).is_zero());
    }
}

#[test]
fn sigma_examples() {
    let b = loop_bracket();
    let q = loop_quiver();
    assert_eq!(sigma_map(&b, &el(&q, "d(t)")).unwrap(), el(&q, "D(t) t - t D(t)"));
    assert_eq!(sigma_map(&b, &el(&q, "t t + 2 e(1)")).unwrap(), el(&q, "t t + 2 e(1)"));
}

#[test]
fn sigma_intertwines_koszul_and_schouten() {
    let q = doubled_two_vertex();
    let table = standard_table(&q).unwrap();
    let b = bracket(table.clone());
    let k = koszul(table).unwrap();
    let s = schouten(&q);
    let mut r = rng(9);
    for _ in 0..20 {
        let x = random_elem(&q, &mut r, 2, 3, &form_kinds(&q));
        let y = random_elem(&q, &mut r, 2, 3, &form_kinds(&q));
        let lhs = k.bracket(&x, &y).map_words(|w| sigma_map(&b, &Elem::word(w.clone())).unwrap());
        let rhs = s.bracket(&sigma_map(&b, &x).unwrap(), &sigma_map(&b, &y).unwrap());
        assert_eq!(normalize_tensor(&lhs, &q), rhs);
    }
}

#[test]
fn standard_form_examples() {
    let q = doubled_loop();
    assert_eq!(standard_bisymplectic(&q).unwrap(), el(&q, "d(t) d(t*)"));
    assert!(necklace(&differential(&q, &standard_bisymplectic(&q).unwrap()).unwrap(), &q).is_zero());
    assert!(standard_bisymplectic(&loop_quiver()).is_err());
}

#[test]
fn derived_bivector_on_doubled_loop() {
    let q = doubled_loop();
    let w = standard_bisymplectic(&q).unwrap();
    let p = poisson_from_symplectic(&q, &w).unwrap();
    assert_eq!(p, el(&q, "D(t*) D(t)"));
    // the induced bracket is the negative of the standard one
    let std = standard_table(&q).unwrap();
    let got = induced_table(&q, &p).unwrap();
    for ((a, b), v) in std.entries() {
        assert_eq!(got.value(*a, *b), -v.clone());
    }
}

#[test]
fn scaling_the_form_rescales_the_bivector() {
    let q = doubled_two_vertex();
    let w = standard_bisymplectic(&q).unwrap();
    let p = poisson_from_symplectic(&q, &w).unwrap();
    let c = rat(3, 2);
    let p3 = poisson_from_symplectic(&q, &w.scale(&c)).unwrap();
    assert_eq!(p3, p.scale(&(Q::one() / c)));
}

#[test]
fn degenerate_forms_are_refused() {
    let q = doubled_loop();
    assert!(poisson_from_symplectic(&q, &el(&q, "d(t) d(t)")).is_err());
    assert!(poisson_from_symplectic(&q, &Elem::zero()).is_err());
    let recs = check_bisymplectic_equivalence(&q, &Elem::zero(), BisymplecticConfig::default());
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].status, Status::Error);
}

#[test]
fn perturbation_outside_the_pattern_is_an_error() {
    let q = doubled_loop();
    let w = standard_bisymplectic(&q).unwrap() + el(&q, "t d(t) d(t*)");
    assert!(!necklace(&differential(&q, &w).unwrap(), &q).is_empty());
    let recs = check_bisymplectic_equivalence(&q, &w, BisymplecticConfig::default());
    assert_eq!(recs[0].status, Status::Error);
}

#[test]
fn equivalence_on_doubled_quivers() {
    let mut qs = vec![doubled_loop(), doubled_two_vertex()];
    for base in crate::sample::corpus(2) {
        if base.n_arrows() > 0 {
            qs.push(base.double().unwrap());
        }
    }
    for q in qs {
        let w = standard_bisymplectic(&q).unwrap();
        let recs = check_bisymplectic_equivalence(&q, &w, BisymplecticConfig::default());
        assert_eq!(recs.len(), 7);
        for r in &recs {
            assert_eq!(r.status, Status::Proved, "{:?}", r);
        }
        let m = recs.iter().find(|r| r.name == "bisymplectic.moment").unwrap();
        assert_eq!(m.params["kappa"], "-1");
    }
}

#[test]
fn recovered_moment_on_doubled_loop() {
    let q = doubled_loop();
    let mu = recover_moment(&q, &standard_bisymplectic(&q).unwrap(), 2).unwrap();
    assert_eq!(mu, vec![el(&q, "t* t - t t*")]);
    assert!(recover_moment(&q, &standard_bisymplectic(&q).unwrap(), 1).is_err());
}

#[test]
fn sigma_of_form_is_minus_bivector() {
    for q in [doubled_loop(), doubled_two_vertex()] {
        let w = standard_bisymplectic(&q).unwrap();
        let p = poisson_from_symplectic(&q, &w).unwrap();
        let b = bracket(induced_table(&q, &p).unwrap());
        assert_eq!(sigma_map(&b, &w).unwrap() + p, Elem::zero());
    }
}

fn cartan_residuals(q: &Quiver, d: &PolyVector, x: &Elem) -> (Tensor, Elem) {
    let l = double_lie(q, d, x).unwrap();
    let di = differential_tensor(q, &double_contraction(q, d, x).unwrap());
    let id = double_contraction(q, d, &differential(q, x).unwrap()).unwrap();
    let big = lie_derivative(q, d, x).unwrap();
    let small = differential(q, &contraction(q, d, x).unwrap()).unwrap() + contraction(q, d, &differential(q, x).unwrap()).unwrap();
    (normalize_tensor(&(l - di - id), q), localize(&(big - small), q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_squares_to_zero(seed in 0u64..10_000, qi in 0usize..3) {
        let q = &quivers()[qi];
        let x = random_elem(q, &mut rng(seed), 4, 4, &form_kinds(q));
        let dx = differential(q, &x).unwrap();
        prop_assert!(differential(q, &dx).unwrap().is_zero());
    }

    #[test]
    fn d_descends_to_necklaces(seed in 0u64..10_000, qi in 0usize..3) {
        let q = &quivers()[qi];
        let x = random_elem(q, &mut rng(seed), 4, 4, &form_kinds(q));
        let a = necklace(&differential(q, &x).unwrap(), q);
        let b = necklace(&differential(q, &necklace(&x, q)).unwrap(), q);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn d_is_a_graded_derivation(seed in 0u64..10_000, qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut r = rng(seed);
        let x = { let k = r.gen_range(0..=2); random_form(q, &mut r, k, 3) };
        let y = random_elem(q, &mut r, 3, 3, &form_kinds(q));
        let s = crate::algebra_core::sign(x.degree().unwrap());
        let lhs = differential(q, &x.mul(&y)).unwrap();
        let rhs = differential(q, &x).unwrap().mul(&y) + x.mul(&differential(q, &y).unwrap()).scale(&s);
        prop_assert_eq!(lhs, localize(&rhs, q));
    }

    #[test]
    fn cartan_formula(seed in 0u64..10_000, qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut r = rng(seed);
        let d = random_field(q, &mut r, 2);
        let x = { let k = r.gen_range(0..=2); random_form(q, &mut r, k, 3) };
        let (t, e) = cartan_residuals(q, &d, &x);
        prop_assert!(t.is_zero(), "L - di - id = {:?}", t);
        prop_assert!(e.is_zero(), "𝓛 - dı - ıd = {:?}", e);
    }

    #[test]
    fn contractions_anticommute(seed in 0u64..10_000, qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut r = rng(seed);
        let d1 = random_field(q, &mut r, 2);
        let d2 = random_field(q, &mut r, 2);
        let x = random_form(q, &mut r, 2, 3);
        let a = double_contraction(q, &d1, &contraction(q, &d2, &x).unwrap()).unwrap();
        let b = double_contraction(q, &d2, &contraction(q, &d1, &x).unwrap()).unwrap();
        prop_assert!(normalize_tensor(&(a + flip(&b)), q).is_zero());
    }

    #[test]
    fn contraction_lie_commutator(seed in 0u64..10_000, qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut r = rng(seed);
        let d1 = random_field(q, &mut r, 2);
        let d2 = random_field(q, &mut r, 2);
        let x = { let k = r.gen_range(1..=2); random_form(q, &mut r, k, 3) };
        let lhs = double_contraction(q, &d1, &lie_derivative(q, &d2, &x).unwrap()).unwrap()
            - flip(&double_lie(q, &d2, &contraction(q, &d1, &x).unwrap()).unwrap());
        let rhs = bracket_contraction(q, &d1, &d2, &x).unwrap();
        prop_assert_eq!(normalize_tensor(&lhs, q), rhs);
    }

    #[test]
    fn inner_derivations_have_zero_lie_derivative(seed in 0u64..10_000, qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut r = rng(seed);
        let x = random_elem(q, &mut r, 4, 4, &form_kinds(q));
        for i in 0..q.n_vertices() {
            prop_assert!(lie_derivative(q, &gauge_element(q, i).unwrap(), &x).unwrap().is_zero());
        }
    }

    #[test]
    fn koszul_commutes_with_d(seed in 0u64..10_000) {
        let q = doubled_two_vertex();
        let k = koszul(standard_table(&q).unwrap()).unwrap();
        let mut r = rng(seed);
        let x = { let k = r.gen_range(0..=1); random_form(&q, &mut r, k, 3) };
        let y = random_elem(&q, &mut r, 3, 3, &form_kinds(&q));
        let s = crate::algebra_core::sign(x.degree().unwrap() + 1);
        let lhs = differential_tensor(&q, &k.bracket(&x, &y));
        let rhs = k.bracket(&differential(&q, &x).unwrap(), &y)
            + k.bracket(&x, &differential(&q, &y).unwrap()).scale(&s);
        prop_assert_eq!(lhs, normalize_tensor(&rhs, &q));
    }
}

#[test]
fn form_identities_are_not_vacuous() {
    let (mut cartan, mut anti, mut comm, mut kosz) = (0, 0, 0, 0);
    for seed in 0..24u64 {
        for q in quivers() {
            let mut r = rng(seed);
            let d1 = random_field(&q, &mut r, 2);
            let d2 = random_field(&q, &mut r, 2);
            let x = random_form(&q, &mut r, 2, 3);
            cartan += !lie_derivative(&q, &d1, &x).unwrap().is_zero() as usize;
            anti += !double_contraction(&q, &d1, &contraction(&q, &d2, &x).unwrap()).unwrap().is_zero() as usize;
            comm += !double_contraction(&q, &d1, &lie_derivative(&q, &d2, &x).unwrap()).unwrap().is_zero() as usize;
        }
        let q = doubled_two_vertex();
        let k = koszul(standard_table(&q).unwrap()).unwrap();
        let mut r = rng(seed);
        let x = random_form(&q, &mut r, 1, 3);
        let y = random_elem(&q, &mut r, 3, 3, &form_kinds(&q));
        kosz += !differential_tensor(&q, &k.bracket(&x, &y)).is_zero() as usize;
    }
    assert!(cartan > 20 && anti > 20 && comm > 20 && kosz > 5, "{} {} {} {}", cartan, anti, comm, kosz);
}
