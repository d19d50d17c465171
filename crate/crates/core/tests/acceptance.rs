//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails or exceeds its time bound.
//!
//! Every check is exact: residuals are compared with zero over the rationals,
//! so there is no numeric tolerance. The time bounds are pinned below.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncpoisson::algebra_core::{localize, parse_elem, Elem, Kind, Quiver, Tensor, Q};
use ncpoisson::brackets::{bracket, check_double_poisson, check_loday, normalize_tensor, Bracket, DoubleBracketTable};
use ncpoisson::forms::{
    bracket_contraction, check_bisymplectic_equivalence, contraction, differential, differential_tensor, double_contraction, double_lie,
    flip, lie_derivative, standard_bisymplectic, BisymplecticConfig,
};
use ncpoisson::fusion::check_fusion_coherence;
use ncpoisson::report::{CheckRecord, Status};
use ncpoisson::repspace::{
    check_gauge_rep, check_lie_poisson, check_moment_rep, check_trace_rep, field_commutator, jacobi_residual, random_point,
    schouten_entry, Coord, DimVector, RepPoint,
};
use ncpoisson::sample::{self, doubled_loop, doubled_two_vertex, random_field, random_form};
use ncpoisson::structures::{general_quasi, one_pair_quasi, one_pair_quiver, standard_hamiltonian};
use num_traits::Zero;
use rand::Rng;

/// Outcome of one criterion: pass flag and a one-line detail.
type Verdict = (bool, String);

/// Number, name, time bound and check.
type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn loop_table(value: &str) -> DoubleBracketTable {
    DoubleBracketTable::new(sample::loop_quiver()).with("t", "t", value).expect("valid table")
}

/// The linear bracket `{{t, t}} = t ⊗ 1 - 1 ⊗ t` on one loop.
fn linear_loop() -> Bracket {
    bracket(loop_table("t ⊗ e(1) - e(1) ⊗ t"))
}

fn proved(rs: &[CheckRecord]) -> Result<(), String> {
    match rs.iter().find(|r| r.status != Status::Proved) {
        None => Ok(()),
        Some(r) => Err(format!("{} is {:?}: {}", r.name, r.status, r.residual.as_deref().unwrap_or(""))),
    }
}

fn dims(a: &[usize]) -> DimVector {
    DimVector::new(a).expect("dimension vector")
}

/// `Σ c X(x_1) ⊗ ... ⊗ X(x_k)` as a sparse map from `(i1, j1, ..., ik, jk)` to its entry.
fn tensor_entries(p: &RepPoint, t: &Tensor) -> BTreeMap<Vec<usize>, Q> {
    let mut acc: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
    for (c, ms) in p.eval_tensor(t).expect("evaluable tensor") {
        let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), c)];
        for m in &ms {
            let mut next = Vec::new();
            for (idx, v) in &partial {
                for i in 0..m.dim() {
                    for j in 0..m.dim() {
                        if !m.get(i, j).is_zero() {
                            next.push(([idx.as_slice(), &[i, j]].concat(), v * m.get(i, j)));
                        }
                    }
                }
            }
            partial = next;
        }
        for (idx, v) in partial {
            *acc.entry(idx).or_insert_with(Q::zero) += v;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

fn c1_loop_brackets() -> Verdict {
    let tables = [("linear", "t ⊗ e(1) - e(1) ⊗ t"), ("quadratic", "t t ⊗ t - t ⊗ t t")];
    for (name, v) in tables {
        let r = check_double_poisson(&bracket(loop_table(v)));
        if r.status != Status::Proved {
            return (false, format!("{} bracket: {:?}", name, r));
        }
    }
    (true, "linear and quadratic loop brackets: triple bracket 0 on generators".into())
}

fn doubled_corpus() -> Vec<Quiver> {
    let mut qs: Vec<Quiver> = sample::corpus(3).iter().map(|q| q.double().expect("double")).collect();
    qs.push(doubled_loop());
    qs.push(doubled_two_vertex());
    qs
}

fn c2_hamiltonian_corpus() -> Verdict {
    let qs = doubled_corpus();
    for q in &qs {
        let s = match standard_hamiltonian(q) {
            Ok(s) => s,
            Err(e) => return (false, format!("construction failed: {}", e)),
        };
        if let Err(e) = proved(&[s.check_bivector(), s.check_moment()]) {
            return (false, format!("{:?}: {}", q.vertices(), e));
        }
    }
    (true, format!("{} doubled quivers: necklace {{P,P}} = 0 and {{P, mu_i}} = -E_i", qs.len()))
}

fn c3_one_pair() -> Verdict {
    let s = one_pair_quasi();
    match proved(&[s.check_bivector(), s.check_moment()]) {
        Ok(()) => (true, "{P,P} - (E1^3 + E2^3)/6 = 0 mod commutators; multiplicative moment exact".into()),
        Err(e) => (false, e),
    }
}

fn orders(q: &Quiver) -> Vec<Vec<String>> {
    let ids: Vec<String> = q.arrows().iter().map(|a| a.id.clone()).collect();
    let mut out = vec![ids.clone()];
    let mut rev = ids;
    rev.reverse();
    out.push(rev);
    out
}

fn c4_general_quasi() -> Verdict {
    let mut n = 0;
    for q in [doubled_loop(), doubled_two_vertex()] {
        for o in orders(&q) {
            let qo = q.with_order(&o).expect("ordering");
            let s = match general_quasi(&qo) {
                Ok(s) => s,
                Err(e) => return (false, e.to_string()),
            };
            if let Err(e) = proved(&[s.check_bivector(), s.check_quasi_bracket(), s.check_moment()]) {
                return (false, format!("order {}: {}", o.join(","), e));
            }
            n += 1;
        }
    }
    (true, format!("{} (quiver, order) pairs: quasi-Poisson and multiplicative moment", n))
}

fn c5_fusion_coherence() -> Verdict {
    let mut qs = vec![doubled_loop(), doubled_two_vertex()];
    qs.extend(sample::corpus(2).iter().filter(|q| q.n_arrows() > 0).map(|q| q.double().expect("double")));
    for q in &qs {
        for o in orders(q) {
            let r = check_fusion_coherence(&q.with_order(&o).expect("ordering"));
            if let Err(e) = proved(&[r]) {
                return (false, e);
            }
        }
    }
    (true, format!("{} quivers, 2 orders each: direct = fused separated structure", qs.len()))
}

fn word_triples(q: &Quiver, seed: u64, n: usize) -> Vec<(Elem, Elem, Elem)> {
    let mut r = sample::rng(seed);
    let mut w = || Elem::word(sample::random_word(q, &mut r, 4, &[Kind::Arrow]));
    (0..n).map(|_| (w(), w(), w())).collect()
}

fn c6_loday() -> Verdict {
    const N: usize = 60;
    let mut runs = vec![("linear loop".to_string(), linear_loop(), word_triples(&sample::loop_quiver(), 1, N))];
    for q in [doubled_loop(), doubled_two_vertex()] {
        let b = standard_hamiltonian(&q).and_then(|s| s.bracket()).expect("standard bracket");
        runs.push((format!("standard on {} vertices", q.n_vertices()), b, word_triples(&q, 2, N)));
    }
    let mut nonzero = Vec::new();
    for (name, b, triples) in &runs {
        let r = check_loday(b, triples);
        if r.status != Status::Proved {
            return (false, format!("{}: {:?}", name, r));
        }
        nonzero.push(triples.iter().filter(|(x, y, z)| !b.single(x, &b.single(y, z)).is_zero()).count());
    }
    // k[t] is commutative, so the associated bracket of the linear table is zero
    // and the identity is trivially true there; the standard brackets carry the content.
    let (lin, b) = (&runs[0].1, sample::loop_quiver());
    let powers: Vec<Elem> = (1..=4).map(|k| parse_elem(&b, &vec!["t"; k].join(" ")).unwrap()).collect();
    if powers.iter().any(|x| powers.iter().any(|y| !lin.single(x, y).is_zero())) {
        return (false, "the linear loop bracket has a nonzero associated bracket".into());
    }
    if nonzero[1..].contains(&0) {
        return (false, format!("nested standard brackets all vanished: {:?}", nonzero));
    }
    (
        true,
        format!("{} random word triples per bracket, 3 brackets; nonzero nested brackets {:?} (linear loop: associated bracket is 0 on k[t])", N, nonzero),
    )
}

fn c7_rep() -> Verdict {
    // (a) the Jacobi expansion on Rep is an identity for arbitrary tables
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "2")]).unwrap().double().unwrap();
    let mut nonzero = 0;
    for seed in 0..12u64 {
        let mut r = sample::rng(seed);
        let br = bracket(sample::random_table(&q, &mut r, 2, 2));
        let xs: Vec<Elem> = (0..3).map(|_| sample::random_elem(&q, &mut r, 2, 2, &[Kind::Arrow])).collect();
        let p = random_point(&q, &dims(&[1 + seed as usize % 2, 1]), seed).unwrap();
        let ev = jacobi_residual(&br, &xs[0], &xs[1], &xs[2], &p).unwrap();
        if !ev.residual().is_zero() {
            return (false, format!("(a) seed {}: LHS - RHS nonzero", seed));
        }
        nonzero += !ev.lhs.is_zero() as usize;
    }
    if nonzero == 0 {
        return (false, "(a) every sampled LHS vanished".into());
    }
    // (b) the linear loop bracket induces the Lie-Poisson bracket
    let lp: Vec<CheckRecord> = (1..=3).flat_map(|n| (0..3).map(move |s| check_lie_poisson(n, s))).collect();
    if let Err(e) = proved(&lp) {
        return (false, format!("(b) {}", e));
    }
    // (c) trace compatibility
    let q = doubled_two_vertex();
    let b = standard_hamiltonian(&q).and_then(|s| s.bracket()).unwrap();
    let mut traces = Vec::new();
    for seed in 0..24u64 {
        let mut r = sample::rng(seed);
        let x = Elem::word(sample::random_closed_word(&q, &mut r, 4, &[Kind::Arrow]));
        let y = sample::random_elem(&q, &mut r, 2, 4, &[Kind::Arrow]);
        let p = random_point(&q, &dims(&[2, 1]), seed).unwrap();
        traces.push(check_trace_rep(&b, &x, &y, &p, Some(seed)));
    }
    if let Err(e) = proved(&traces) {
        return (false, format!("(c) {}", e));
    }
    // (d) gauge action
    let mut gauges = Vec::new();
    for (seed, q) in [doubled_loop(), doubled_two_vertex(), one_pair_quiver()].iter().enumerate() {
        let alpha = vec![2; q.n_vertices()];
        gauges.push(check_gauge_rep(&random_point(q, &dims(&alpha), seed as u64).unwrap(), Some(seed as u64)));
    }
    if let Err(e) = proved(&gauges) {
        return (false, format!("(d) {}", e));
    }
    (true, format!("(a) 12 random tables ({} nonzero LHS), (b) n = 1..3, (c) {} traces, (d) 3 quivers", nonzero, traces.len()))
}

fn c8_quasi_on_rep() -> Verdict {
    let s = one_pair_quasi();
    let mut n = 0;
    for alpha in [[1, 1], [2, 1]] {
        for seed in 0..6u64 {
            let p = random_point(&s.quiver, &dims(&alpha), seed).unwrap();
            if let Err(e) = proved(&check_moment_rep(&s, &p, Some(seed))) {
                return (false, format!("alpha {:?} seed {}: {}", alpha, seed, e));
            }
            n += 1;
        }
    }
    (true, format!("{} points over alpha = (1,1), (2,1)", n))
}

fn c9_forms() -> Verdict {
    let qs = [doubled_loop(), doubled_two_vertex(), one_pair_quiver()];
    let mut nonzero = 0;
    for seed in 0..20u64 {
        for q in &qs {
            let mut r = sample::rng(seed);
            let d1 = random_field(q, &mut r, 2);
            let d2 = random_field(q, &mut r, 2);
            let k = r.gen_range(0..=2);
            let x = random_form(q, &mut r, k, 3);
            let x2 = random_form(q, &mut r, 2, 3);
            // Cartan
            let l = double_lie(q, &d1, &x).unwrap();
            let di = differential_tensor(q, &double_contraction(q, &d1, &x).unwrap());
            let id = double_contraction(q, &d1, &differential(q, &x).unwrap()).unwrap();
            if !normalize_tensor(&(l.clone() - di - id), q).is_zero() {
                return (false, format!("Cartan (double) fails at seed {}", seed));
            }
            let small = differential(q, &contraction(q, &d1, &x).unwrap()).unwrap() + contraction(q, &d1, &differential(q, &x).unwrap()).unwrap();
            if !localize(&(lie_derivative(q, &d1, &x).unwrap() - small), q).is_zero() {
                return (false, format!("Cartan fails at seed {}", seed));
            }
            // contractions anticommute
            let a = double_contraction(q, &d1, &contraction(q, &d2, &x2).unwrap()).unwrap();
            let b = double_contraction(q, &d2, &contraction(q, &d1, &x2).unwrap()).unwrap();
            if !normalize_tensor(&(a.clone() + flip(&b)), q).is_zero() {
                return (false, format!("contractions do not anticommute at seed {}", seed));
            }
            // contraction against a Lie derivative
            let lhs = double_contraction(q, &d1, &lie_derivative(q, &d2, &x2).unwrap()).unwrap()
                - flip(&double_lie(q, &d2, &contraction(q, &d1, &x2).unwrap()).unwrap());
            let rhs = bracket_contraction(q, &d1, &d2, &x2).unwrap();
            if normalize_tensor(&lhs, q) != rhs {
                return (false, format!("contraction-Lie commutator fails at seed {}", seed));
            }
            nonzero += (!l.is_zero()) as usize + (!a.is_zero()) as usize + (!rhs.is_zero()) as usize;
        }
    }
    for q in [doubled_loop(), doubled_two_vertex()] {
        let omega = standard_bisymplectic(&q).unwrap();
        let rs = check_bisymplectic_equivalence(&q, &omega, BisymplecticConfig::default());
        if let Err(e) = proved(&rs) {
            return (false, e);
        }
        if rs.len() != 7 {
            return (false, format!("expected 7 records, got {}", rs.len()));
        }
        let m = rs.iter().find(|r| r.name == "bisymplectic.moment").unwrap();
        let kappa = parse_elem(&q, &m.params["kappa"]).unwrap();
        let mu = parse_elem(&q, &m.params["mu"]).unwrap();
        let standard = standard_hamiltonian(&q).unwrap().moment;
        if !localize(&(mu - kappa.mul(&standard)), &q).is_zero() {
            return (false, "recovered moment is not kappa * sum [a, a*]".into());
        }
    }
    (true, format!("Cartan, anticommutation, commutator on 60 samples ({} nonzero sides); standard form on L and P2", nonzero))
}

/// Four identity families sampled at random points, 250 samples each.
fn c10_consistency() -> Verdict {
    const PER: u64 = 250;
    let q = doubled_two_vertex();
    let ql = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "2")]).unwrap().double().unwrap();
    let mut nonzero = [0usize; 4];
    for seed in 0..PER {
        let mut r = sample::rng(seed);
        let alpha = [r.gen_range(1..=2), r.gen_range(1..=2)];
        let p = random_point(&q, &dims(&alpha), seed).unwrap();
        let pl = random_point(&ql, &dims(&alpha), seed).unwrap();
        let kinds = [Kind::Arrow, Kind::Inverse];
        let qi = q.with_all_inverted().unwrap();
        let pi = random_point(&qi, &dims(&alpha), seed).unwrap();
        let (x, y, z) = (
            sample::random_elem(&qi, &mut r, 2, 3, &kinds),
            sample::random_elem(&qi, &mut r, 2, 3, &kinds),
            sample::random_elem(&qi, &mut r, 2, 3, &kinds),
        );
        // associativity of the rewritten product against matrix products
        let lhs = pi.eval(&x.mul(&y).mul(&z)).unwrap();
        let mid = pi.eval(&x.mul(&y.mul(&z))).unwrap();
        let rhs = &(&pi.eval(&x).unwrap() * &pi.eval(&y).unwrap()) * &pi.eval(&z).unwrap();
        if lhs != rhs || mid != rhs {
            return (false, format!("associativity at seed {}", seed));
        }
        nonzero[0] += !rhs.is_zero() as usize;

        // antisymmetry of a random double bracket
        let b = bracket(sample::random_table(&ql, &mut r, 2, 2));
        let (u, v, w) = (
            sample::random_elem(&ql, &mut r, 2, 3, &[Kind::Arrow]),
            sample::random_elem(&ql, &mut r, 2, 3, &[Kind::Arrow]),
            sample::random_elem(&ql, &mut r, 2, 3, &[Kind::Arrow]),
        );
        let buv = tensor_entries(&pl, &b.bracket(&u, &v));
        let bvu: BTreeMap<Vec<usize>, Q> =
            tensor_entries(&pl, &b.bracket(&v, &u)).into_iter().map(|(i, c)| (vec![i[2], i[3], i[0], i[1]], -c)).collect();
        if buv != bvu {
            return (false, format!("antisymmetry at seed {}", seed));
        }
        nonzero[1] += !buv.is_empty() as usize;

        // the associated bracket acting on a double bracket
        let lhs = b.single_on_tensor(&u, &b.bracket(&v, &w)) - b.bracket(&b.single(&u, &v), &w) - b.bracket(&v, &b.single(&u, &w));
        let rhs = b.triple(&u, &v, &w).merge_slots(0) - b.triple(&v, &u, &w).merge_slots(1);
        let (le, re) = (tensor_entries(&pl, &lhs), tensor_entries(&pl, &rhs));
        if le != re {
            return (false, format!("bracket action identity at seed {}", seed));
        }
        nonzero[2] += !le.is_empty() as usize;

        // Schouten bracket on Rep against the commutator of vector fields
        let (d1, d2) = (random_field(&q, &mut r, 2), random_field(&q, &mut r, 2));
        let a = r.gen_range(0..q.n_arrows());
        let (rows, cols) = (p.dims().block(q.tail(a)), p.dims().block(q.head(a)));
        let f = Coord::new(Elem::letter(q.letter(Kind::Arrow, a)), r.gen_range(rows), r.gen_range(cols));
        let n = p.n();
        let mut hit = false;
        for _ in 0..4 {
            let ij = (r.gen_range(0..n), r.gen_range(0..n));
            let uv = (r.gen_range(0..n), r.gen_range(0..n));
            let l = field_commutator(&p, &d1, ij, &d2, uv, &f).unwrap();
            if l != schouten_entry(&p, &d1, ij, &d2, uv, &f).unwrap() {
                return (false, format!("Schouten on Rep at seed {}", seed));
            }
            hit |= !l.is_zero();
        }
        nonzero[3] += hit as usize;
    }
    if nonzero.contains(&0) {
        return (false, format!("a family was vacuous: nonzero counts {:?}", nonzero));
    }
    (true, format!("{} identities, nonzero sides per family {:?}", 4 * PER, nonzero))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "loop brackets are double Poisson", secs(1), c1_loop_brackets),
        (2, "standard Hamiltonian structure on the corpus", secs(10), c2_hamiltonian_corpus),
        (3, "one-pair quasi-Hamiltonian structure", secs(30), c3_one_pair),
        (4, "general quasi-Hamiltonian structure under two orders", secs(120), c4_general_quasi),
        (5, "fusion coherence", secs(120), c5_fusion_coherence),
        (6, "Loday identity on random triples", secs(60), c6_loday),
        (7, "representation space identities", secs(120), c7_rep),
        (8, "multiplicative moment on Rep", secs(60), c8_quasi_on_rep),
        (9, "forms: Cartan, contraction identities, bi-symplectic", secs(60), c9_forms),
        (10, "randomized consistency at points", secs(300), c10_consistency),
    ];
    let mut failed = 0;
    for (n, name, bound, f) in criteria {
        let start = Instant::now();
        let (ok, detail) = f();
        let took = start.elapsed();
        let pass = ok && took <= bound;
        failed += !pass as usize;
        println!(
            "criterion {:>2} {}: {} ({:.2}s, bound {}s; exact, tolerance 0) {}",
            n,
            if pass { "PASS" } else { "FAIL" },
            name,
            took.as_secs_f64(),
            bound.as_secs(),
            if ok { detail } else { format!("FAILED: {}", detail) }
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", failed);
        ExitCode::FAILURE
    }
}
