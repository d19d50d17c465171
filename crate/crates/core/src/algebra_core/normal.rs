//! Normal forms: the localization rewriting system and cyclic (necklace) classes.
//!
//! Each pair `{a, a*}` with an inverted `e + a a*` keeps one canonical inverse
//! letter `ι_c`; the other one is expanded through `(e + c* c)^-1 = e - c* ι_c c`.
//! The remaining rules `ι_c c c* -> e - ι_c` and `c c* ι_c -> e - ι_c` shorten
//! words and their only overlaps (`ι_c c c* ι_c`, `c c* ι_c c c*`) resolve, so
//! the irreducible form is unique.

use num_traits::One;

use super::element::{sign, Elem, Q};
use super::quiver::Quiver;
use super::word::{Kind, Letter, Word};

enum Step {
    Irreducible,
    Rewritten(Elem),
}

/// Splices `mid` between `w[..lo]` and `w[hi..]`.
fn splice(w: &Word, lo: usize, hi: usize, mid: &Elem) -> Elem {
    let u = w.slice(0, lo);
    let v = w.slice(hi, w.len());
    mid.mul_word_left(&u).mul_word_right(&v)
}

fn is_redex_start(q: &Quiver, l0: &Letter, l1: &Letter, l2: &Letter) -> Option<usize> {
    // ι_c c c*
    if l0.kind == Kind::Inverse && l1.kind == Kind::Arrow && l2.kind == Kind::Arrow {
        let c = l0.arrow as usize;
        if l1.arrow as usize == c && q.star(c) == Some(l2.arrow as usize) {
            return Some(c);
        }
    }
    None
}

fn is_redex_end(q: &Quiver, l0: &Letter, l1: &Letter, l2: &Letter) -> Option<usize> {
    // c c* ι_c
    if l2.kind == Kind::Inverse && l0.kind == Kind::Arrow && l1.kind == Kind::Arrow {
        let c = l2.arrow as usize;
        if l0.arrow as usize == c && q.star(c) == Some(l1.arrow as usize) {
            return Some(c);
        }
    }
    None
}

/// `e_{t(c)} - ι_c`.
fn unit_minus_inverse(q: &Quiver, c: usize) -> Elem {
    Elem::idem(q.tail(c)) - Elem::letter(q.letter(Kind::Inverse, c))
}

fn step(q: &Quiver, w: &Word) -> Step {
    let ls = w.letters();
    for (k, l) in ls.iter().enumerate() {
        if l.kind != Kind::Inverse {
            continue;
        }
        let x = l.arrow as usize;
        let c = q.canonical_inverse(x).unwrap_or(x);
        if c != x {
            // ι_x = e - x ι_c x*, with c = x*
            let inner = Elem::letter(q.letter(Kind::Arrow, x))
                .mul(&Elem::letter(q.letter(Kind::Inverse, c)))
                .mul(&Elem::letter(q.letter(Kind::Arrow, c)));
            let mid = Elem::idem(q.tail(x)) - inner;
            return Step::Rewritten(splice(w, k, k + 1, &mid));
        }
    }
    for k in 0..ls.len().saturating_sub(2) {
        if let Some(c) = is_redex_start(q, &ls[k], &ls[k + 1], &ls[k + 2]) {
            return Step::Rewritten(splice(w, k, k + 3, &unit_minus_inverse(q, c)));
        }
        if let Some(c) = is_redex_end(q, &ls[k], &ls[k + 1], &ls[k + 2]) {
            return Step::Rewritten(splice(w, k, k + 3, &unit_minus_inverse(q, c)));
        }
    }
    Step::Irreducible
}

/// Rewrites to the unique irreducible form. Words without inverse letters are untouched.
pub fn localize(x: &Elem, q: &Quiver) -> Elem {
    let mut out = Elem::zero();
    let mut pending = x.clone();
    while !pending.is_zero() {
        let mut next = Elem::zero();
        for (w, c) in pending.into_terms() {
            if w.count_kind(Kind::Inverse) == 0 {
                out.add_term(w, c);
                continue;
            }
            match step(q, &w) {
                Step::Irreducible => out.add_term(w, c),
                Step::Rewritten(e) => next.add_scaled(&e, &c),
            }
        }
        pending = next;
    }
    out
}

/// Sign of the rotation `uv -> vu` where `u = w[..k]`.
pub fn rotation_sign(w: &Word, k: usize) -> Q {
    let du = w.slice(0, k).degree();
    sign(du * (w.degree() - du))
}

/// A redex read cyclically, returned as the rotation that brings it to the front.
fn cyclic_redex(q: &Quiver, w: &Word) -> Option<(usize, usize)> {
    let ls = w.letters();
    let n = ls.len();
    if n < 3 || w.count_kind(Kind::Inverse) == 0 {
        return None;
    }
    for r in 0..n {
        let (a, b, c) = (&ls[r], &ls[(r + 1) % n], &ls[(r + 2) % n]);
        if let Some(arrow) = is_redex_start(q, a, b, c).or_else(|| is_redex_end(q, a, b, c)) {
            return Some((r, arrow));
        }
    }
    None
}

/// Minimal rotation of a closed irreducible word with its sign, or `None`
/// when the word equals minus itself.
pub fn minimal_rotation(w: &Word) -> Option<(Word, Q)> {
    let n = w.len();
    if n == 0 {
        return Some((w.clone(), Q::one()));
    }
    let mut best: Option<(Word, Q)> = None;
    let mut conflict = false;
    for k in 0..n {
        let r = w.rotate(k);
        let s = rotation_sign(w, k);
        match &best {
            None => best = Some((r, s)),
            Some((b, bs)) => {
                if r < *b {
                    best = Some((r, s));
                    conflict = false;
                } else if r == *b && s != *bs {
                    conflict = true;
                }
            }
        }
    }
    if conflict {
        None
    } else {
        best
    }
}

/// Canonical representative modulo graded commutators.
pub fn necklace(x: &Elem, q: &Quiver) -> Elem {
    let mut out = Elem::zero();
    let mut pending = localize(&x.filter(|w| w.is_closed()), q);
    while !pending.is_zero() {
        let mut next = Elem::zero();
        for (w, c) in pending.into_terms() {
            if !w.is_closed() {
                continue;
            }
            if let Some((r, arrow)) = cyclic_redex(q, &w) {
                let s = rotation_sign(&w, r);
                let rot = w.rotate(r);
                let mid = unit_minus_inverse(q, arrow);
                let e = splice(&rot, 0, 3, &mid);
                next.add_scaled(&localize(&e, q), &(c * s));
                continue;
            }
            if let Some((m, s)) = minimal_rotation(&w) {
                out.add_term(m, c * s);
            }
        }
        pending = next;
    }
    out
}

/// True when `x - y` vanishes modulo graded commutators.
pub fn equal_mod_commutators(x: &Elem, y: &Elem, q: &Quiver) -> bool {
    necklace(&(x - y), q).is_zero()
}

/// True when `x` and `y` have the same localized normal form.
pub fn equal_localized(x: &Elem, y: &Elem, q: &Quiver) -> bool {
    localize(&(x - y), q).is_zero()
}

/// The unit `Σ e_i`, used by callers building `e + a a*` style factors.
pub fn unit(q: &Quiver) -> Elem {
    Elem::one(q.n_vertices())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap().double().unwrap().with_inverted(&["a"]).unwrap()
    }

    fn l(q: &Quiver, k: Kind, id: &str) -> Elem {
        Elem::letter(q.letter(k, q.arrow_index(id).unwrap()))
    }

    #[test]
    fn direct_rule() {
        let q = p2();
        let x = l(&q, Kind::Inverse, "a").mul(&l(&q, Kind::Arrow, "a")).mul(&l(&q, Kind::Arrow, "a*"));
        assert_eq!(localize(&x, &q), Elem::idem(0) - l(&q, Kind::Inverse, "a"));
    }

    #[test]
    fn inverse_times_defining_element() {
        let q = p2();
        let i = l(&q, Kind::Inverse, "a");
        let aa = l(&q, Kind::Arrow, "a").mul(&l(&q, Kind::Arrow, "a*"));
        let x = i.clone() + i.mul(&aa);
        assert_eq!(localize(&x, &q), Elem::idem(0));
    }

    #[test]
    fn partner_inverse_expands() {
        let q = p2().with_inverted(&["a*"]).unwrap();
        let x = l(&q, Kind::Arrow, "a*").mul(&l(&q, Kind::Inverse, "a")).mul(&l(&q, Kind::Arrow, "a"))
            + l(&q, Kind::Inverse, "a*");
        assert_eq!(localize(&x, &q), Elem::idem(1));
    }

    #[test]
    fn rotations_of_a_cycle_differ_by_base_vertex() {
        let q = p2();
        let aa = l(&q, Kind::Arrow, "a").mul(&l(&q, Kind::Arrow, "a*"));
        let ba = l(&q, Kind::Arrow, "a*").mul(&l(&q, Kind::Arrow, "a"));
        // as necklaces these are the same cycle; as words they differ
        assert_ne!(aa, ba);
        assert!(equal_mod_commutators(&aa, &ba, &q));
    }

    #[test]
    fn odd_square_vanishes() {
        let q = Quiver::new(&["1"], &[("t", "1", "1")]).unwrap();
        let d = l(&q, Kind::Derivation, "t");
        assert!(necklace(&d.mul(&d), &q).is_zero());
        let t = l(&q, Kind::Arrow, "t");
        // t·∂t·∂t is not a graded commutator
        assert!(!necklace(&t.mul(&d).mul(&d), &q).is_zero());
    }

    #[test]
    fn cyclic_redex_is_reduced() {
        let q = p2();
        // a* ι_a a is cyclically ι_a a a*
        let x = l(&q, Kind::Arrow, "a*").mul(&l(&q, Kind::Inverse, "a")).mul(&l(&q, Kind::Arrow, "a"));
        let y = Elem::idem(0) - l(&q, Kind::Inverse, "a");
        assert!(equal_mod_commutators(&x, &y, &q));
    }

    #[test]
    fn open_words_vanish() {
        let q = p2();
        assert!(necklace(&l(&q, Kind::Arrow, "a"), &q).is_zero());
    }
}
