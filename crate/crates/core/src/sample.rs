//! Standard fixtures, the small-quiver corpus and seeded random elements.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra_core::{localize, rat, Elem, Kind, Letter, Quiver, Tensor, Word};
use crate::brackets::DoubleBracketTable;

/// One vertex with a loop `t`.
pub fn loop_quiver() -> Quiver {
    Quiver::new(&["1"], &[("t", "1", "1")]).expect("fixture")
}

/// The double of [`loop_quiver`]: loops `t`, `t*`.
pub fn doubled_loop() -> Quiver {
    loop_quiver().double().expect("fixture")
}

/// Two vertices with `a: 1 -> 2`.
pub fn two_vertex() -> Quiver {
    Quiver::new(&["1", "2"], &[("a", "1", "2")]).expect("fixture")
}

/// The double of [`two_vertex`]: `a: 1 -> 2`, `a*: 2 -> 1`.
pub fn doubled_two_vertex() -> Quiver {
    two_vertex().double().expect("fixture")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected quivers with at most `max_arrows` arrows up to vertex relabeling,
/// plus the single vertex. Arrows are named `a0, a1, ...`, vertices `1..n`.
pub fn corpus(max_arrows: usize) -> Vec<Quiver> {
    let mut out = vec![Quiver::new(&["1"], &[]).expect("single vertex")];
    for k in 1..=max_arrows {
        for n in 1..=k + 1 {
            let mut seen = BTreeSet::new();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..n).map(move |h| (t, h))).collect();
            let mut idx = vec![0usize; k];
            loop {
                let arrows: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
                if connected(n, &arrows) {
                    let canon = canonical(n, &arrows);
                    if seen.insert(canon.clone()) {
                        let names: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
                        let specs: Vec<(String, String, String)> = canon
                            .iter()
                            .enumerate()
                            .map(|(i, &(t, h))| (format!("a{}", i), names[t].clone(), names[h].clone()))
                            .collect();
                        let refs: Vec<(&str, &str, &str)> =
                            specs.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
                        out.push(Quiver::new(&names, &refs).expect("corpus quiver"));
                    }
                }
                // next non-decreasing index tuple
                let mut j = k;
                loop {
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    if idx[j] + 1 < pairs.len() {
                        idx[j] += 1;
                        for m in j + 1..k {
                            idx[m] = idx[j];
                        }
                        j = usize::MAX;
                        break;
                    }
                }
                if j != usize::MAX {
                    break;
                }
            }
        }
    }
    out
}

fn connected(n: usize, arrows: &[(usize, usize)]) -> bool {
    let mut reach = vec![false; n];
    reach[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(t, h) in arrows {
            if reach[t] != reach[h] {
                reach[t] = true;
                reach[h] = true;
                changed = true;
            }
        }
    }
    reach.iter().all(|&r| r)
}

fn canonical(n: usize, arrows: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    permutations(&mut perm, 0, &mut |p| {
        let mut v: Vec<(usize, usize)> = arrows.iter().map(|&(t, h)| (p[t], p[h])).collect();
        v.sort();
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    });
    best.expect("at least one permutation")
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Letters of the allowed kinds that can start at vertex `v`.
fn letters_from(q: &Quiver, v: usize, kinds: &[Kind]) -> Vec<Letter> {
    let mut out = Vec::new();
    for a in 0..q.n_arrows() {
        for &k in kinds {
            if k == Kind::Inverse && !q.has_inverse(a) {
                continue;
            }
            let l = q.letter(k, a);
            if l.src as usize == v {
                out.push(l);
            }
        }
    }
    out
}

/// A random path of length at most `max_len` starting at a random vertex.
pub fn random_word(q: &Quiver, r: &mut impl Rng, max_len: usize, kinds: &[Kind]) -> Word {
    let mut v = r.gen_range(0..q.n_vertices());
    let len = r.gen_range(0..=max_len);
    let mut letters = Vec::new();
    for _ in 0..len {
        let opts = letters_from(q, v, kinds);
        let Some(l) = opts.choose(r) else { break };
        letters.push(*l);
        v = l.tgt as usize;
    }
    Word::from_letters(letters).unwrap_or_else(|| Word::idem(v))
}

/// A random path that starts and ends at the same vertex, if one is found.
pub fn random_closed_word(q: &Quiver, r: &mut impl Rng, max_len: usize, kinds: &[Kind]) -> Word {
    for _ in 0..64 {
        let w = random_word(q, r, max_len, kinds);
        if w.is_closed() {
            return w;
        }
    }
    Word::idem(r.gen_range(0..q.n_vertices()))
}

/// A random small rational, never zero.
pub fn random_coeff(r: &mut impl Rng) -> crate::algebra_core::Q {
    let n = r.gen_range(1..=5) * if r.gen_bool(0.5) { 1 } else { -1 };
    rat(n, r.gen_range(1..=3))
}

/// A random element with up to `terms` words of length at most `max_len`.
pub fn random_elem(q: &Quiver, r: &mut impl Rng, terms: usize, max_len: usize, kinds: &[Kind]) -> Elem {
    let mut e = Elem::zero();
    for _ in 0..r.gen_range(1..=terms.max(1)) {
        e.add_term(random_word(q, r, max_len, kinds), random_coeff(r));
    }
    e
}

/// Like [`random_elem`] with every word between the fixed vertices `i` and `j`.
pub fn random_corner_elem(q: &Quiver, r: &mut impl Rng, i: usize, j: usize, terms: usize, max_len: usize, kinds: &[Kind]) -> Elem {
    let mut e = Elem::zero();
    for _ in 0..terms.max(1) * 16 {
        if e.len() >= terms {
            break;
        }
        let w = random_word(q, r, max_len, kinds);
        if w.src() == i && w.tgt() == j {
            e.add_term(w, random_coeff(r));
        }
    }
    e
}

/// A random double bracket table on the path algebra: every arrow pair gets a
/// value in the allowed corners, antisymmetrized on the diagonal.
pub fn random_table(q: &Quiver, r: &mut impl Rng, terms: usize, max_len: usize) -> DoubleBracketTable {
    let mut t = DoubleBracketTable::new(q.clone());
    for a in 0..q.n_arrows() {
        for b in a..q.n_arrows() {
            let x = random_corner_elem(q, r, q.tail(b), q.head(a), terms, max_len, &[Kind::Arrow]);
            let y = random_corner_elem(q, r, q.tail(a), q.head(b), terms, max_len, &[Kind::Arrow]);
            let v = if a == b { Tensor::pair(&x, &y) - Tensor::pair(&y, &x) } else { Tensor::pair(&x, &y) };
            t.set(a, b, v).expect("values lie in the allowed corners");
        }
    }
    t
}

/// Letter kinds of forms on `q`: arrows, differentials, and inverse letters when present.
pub fn form_kinds(q: &Quiver) -> Vec<Kind> {
    let mut k = vec![Kind::Arrow, Kind::Differential];
    if (0..q.n_arrows()).any(|a| q.has_inverse(a)) {
        k.push(Kind::Inverse);
    }
    k
}

/// A grade 1 double derivation `Σ c x D(b) y` with `terms` terms and short words `x`, `y`.
pub fn random_field(q: &Quiver, r: &mut impl Rng, terms: usize) -> Elem {
    let mut kinds = vec![Kind::Arrow];
    if (0..q.n_arrows()).any(|a| q.has_inverse(a)) {
        kinds.push(Kind::Inverse);
    }
    let mut out = Elem::zero();
    while out.len() < terms {
        let b = r.gen_range(0..q.n_arrows());
        let x = random_word(q, r, 2, &kinds);
        let y = random_word(q, r, 2, &kinds);
        let d = Word::letter(q.letter(Kind::Derivation, b));
        if let Some(w) = x.concat(&d).and_then(|w| w.concat(&y)) {
            out.add_term(w, rat(r.gen_range(-3..=3), r.gen_range(1..=2)));
        }
    }
    localize(&out, q)
}

/// A nonzero form of degree `deg` with words of length at most `max_len`.
pub fn random_form(q: &Quiver, r: &mut impl Rng, deg: usize, max_len: usize) -> Elem {
    loop {
        let x = random_elem(q, r, 4, max_len, &form_kinds(q)).filter(|w| w.count_kind(Kind::Differential) == deg);
        if !x.is_zero() {
            return localize(&x, q);
        }
    }
}
