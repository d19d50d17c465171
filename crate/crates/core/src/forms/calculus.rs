//! The differential `d`, contractions `i_δ`, `ı_δ = °i_δ` and Lie derivatives
//! `L_δ`, `𝓛_δ = °L_δ` on noncommutative differential forms.

use num_traits::One;

use crate::algebra_core::{localize, sign, Elem, Kind, Letter, Perm, Quiver, Tensor, Word, Q};
use crate::brackets::normalize_tensor;
use crate::error::{Error, Result};
use crate::polyvectors::{apply_derivation, schouten, PolyVector};

/// Elements of `Ω_B A`: words in arrows, inverse letters and differentials `d(a)`.
/// The form degree is the number of `d(a)` letters.
pub type FormElement = Elem;

/// Rejects derivation letters, which do not live in `Ω_B A`.
pub fn check_form(x: &Elem) -> Result<()> {
    if x.has_kind(Kind::Derivation) {
        Err(Error::Degree("forms cannot contain derivation letters".into()))
    } else {
        Ok(())
    }
}

fn letter_elem(q: &Quiver, k: Kind, a: usize) -> Elem {
    Elem::letter(q.letter(k, a))
}

fn d_letter(q: &Quiver, l: &Letter) -> Elem {
    match l.kind {
        Kind::Arrow => letter_elem(q, Kind::Differential, l.arrow as usize),
        // d(ι) = -ι d(c c*) ι
        Kind::Inverse => {
            let c = l.arrow as usize;
            let s = q.star(c).expect("inverse letters have a partner arrow");
            let dcc = letter_elem(q, Kind::Differential, c).mul(&letter_elem(q, Kind::Arrow, s))
                + letter_elem(q, Kind::Arrow, c).mul(&letter_elem(q, Kind::Differential, s));
            let iota = Elem::letter(*l);
            iota.mul(&dcc).mul(&iota).scale(&-Q::one())
        }
        _ => Elem::zero(),
    }
}

fn d_word(q: &Quiver, w: &Word) -> Elem {
    let mut out = Elem::zero();
    for j in 0..w.len() {
        let img = d_letter(q, &w.letters()[j]);
        if img.is_zero() {
            continue;
        }
        let pre = w.slice(0, j);
        let s = sign(pre.degree());
        out.add_scaled(&img.mul_word_left(&pre).mul_word_right(&w.slice(j + 1, w.len())), &s);
    }
    out
}

/// `d`: the degree +1 graded derivation with `d(a) = da`, `d(da) = 0`.
pub fn differential(q: &Quiver, x: &Elem) -> Result<Elem> {
    check_form(x)?;
    Ok(localize(&x.map_words(|w| d_word(q, w)), q))
}

/// `d` on a tensor by the graded Leibniz rule across slots.
pub fn differential_tensor(q: &Quiver, t: &Tensor) -> Tensor {
    let mut out = Tensor::zero(t.arity());
    for i in 0..t.arity() {
        out.add_scaled(&t.map_slot(i, Some(1), |w| d_word(q, w)), &Q::one());
    }
    normalize_tensor(&out, q)
}

/// `°(c1 ⊗ c2) = (-1)^{|c1||c2|} c2 c1`.
pub fn circ(t: &Tensor) -> Elem {
    t.permute(&Perm(vec![1, 0]), true).expect("arity 2").multiply_out()
}

/// `σ_(12)` with the Koszul sign.
pub fn flip(t: &Tensor) -> Tensor {
    t.permute(&Perm(vec![1, 0]), true).expect("arity 2")
}

/// A grade-1 poly-vector evaluated once on every arrow and inverse letter.
struct Action {
    arrows: Vec<Tensor>,
    inverses: Vec<Tensor>,
}

impl Action {
    fn new(q: &Quiver, delta: &PolyVector) -> Result<Action> {
        if !delta.is_zero() && delta.grade() != Some(1) {
            return Err(Error::Degree("expected a grade 1 poly-vector".into()));
        }
        if delta.has_kind(Kind::Differential) {
            return Err(Error::Degree("poly-vectors cannot contain differential letters".into()));
        }
        let mut arrows = Vec::with_capacity(q.n_arrows());
        let mut inverses = Vec::with_capacity(q.n_arrows());
        for a in 0..q.n_arrows() {
            arrows.push(apply_derivation(q, delta, &letter_elem(q, Kind::Arrow, a))?);
            inverses.push(if q.has_inverse(a) {
                apply_derivation(q, delta, &letter_elem(q, Kind::Inverse, a))?
            } else {
                Tensor::zero(2)
            });
        }
        Ok(Action { arrows, inverses })
    }

    fn value(&self, l: &Letter) -> &Tensor {
        match l.kind {
            Kind::Inverse => &self.inverses[l.arrow as usize],
            _ => &self.arrows[l.arrow as usize],
        }
    }

    /// Sum over letter positions of `(-1)^{shift·|prefix|} prefix · f(letter) · suffix`.
    fn leibniz(&self, w: &Word, shift: usize, f: impl Fn(&Letter) -> Option<Tensor>) -> Tensor {
        let mut out = Tensor::zero(2);
        for j in 0..w.len() {
            let Some(img) = f(&w.letters()[j]) else { continue };
            let pre = w.slice(0, j);
            let s = sign(shift * pre.degree());
            out.add_scaled(&img.outer(&Elem::word(pre), &Elem::word(w.slice(j + 1, w.len()))), &s);
        }
        out
    }
}

fn over_terms(x: &Elem, f: impl Fn(&Word) -> Tensor) -> Tensor {
    let mut out = Tensor::zero(2);
    for (w, c) in x.terms() {
        out.add_scaled(&f(w), c);
    }
    out
}

/// `i_δ`: degree -1 double derivation with `i_δ(a) = 0`, `i_δ(da) = δ(a)`.
pub fn double_contraction(q: &Quiver, delta: &PolyVector, x: &Elem) -> Result<Tensor> {
    check_form(x)?;
    let act = Action::new(q, delta)?;
    let t = over_terms(x, |w| {
        act.leibniz(w, 1, |l| (l.kind == Kind::Differential).then(|| act.value(l).clone()))
    });
    Ok(normalize_tensor(&t, q))
}

/// `ı_δ = °i_δ`.
pub fn contraction(q: &Quiver, delta: &PolyVector, x: &Elem) -> Result<Elem> {
    Ok(localize(&circ(&double_contraction(q, delta, x)?), q))
}

/// `L_δ`: degree 0 double derivation with `L_δ(a) = δ(a)`, `L_δ(da) = d(δ(a))`.
pub fn double_lie(q: &Quiver, delta: &PolyVector, x: &Elem) -> Result<Tensor> {
    check_form(x)?;
    let act = Action::new(q, delta)?;
    let t = over_terms(x, |w| {
        act.leibniz(w, 0, |l| match l.kind {
            Kind::Arrow | Kind::Inverse => Some(act.value(l).clone()),
            Kind::Differential => Some(differential_tensor(q, act.value(l))),
            Kind::Derivation => None,
        })
    });
    Ok(normalize_tensor(&t, q))
}

/// `𝓛_δ = °L_δ`.
pub fn lie_derivative(q: &Quiver, delta: &PolyVector, x: &Elem) -> Result<Elem> {
    Ok(localize(&circ(&double_lie(q, delta, x)?), q))
}

/// The right side of `i_δ 𝓛_Δ - σ₁₂ L_Δ ı_δ` on a form `x`: the Schouten
/// bracket `{{δ, Δ}}` with its derivation slot contracted into `x`.
pub fn bracket_contraction(q: &Quiver, delta: &PolyVector, cap: &PolyVector, x: &Elem) -> Result<Tensor> {
    let br = schouten(q).bracket(delta, cap);
    let mut out = Tensor::zero(2);
    for (ws, c) in br.terms() {
        let grades = (ws[0].count_kind(Kind::Derivation), ws[1].count_kind(Kind::Derivation));
        let t = match grades {
            (1, 0) => Tensor::pair(&contraction(q, &Elem::word(ws[0].clone()), x)?, &Elem::word(ws[1].clone())),
            (0, 1) => Tensor::pair(&Elem::word(ws[0].clone()), &contraction(q, &Elem::word(ws[1].clone()), x)?),
            _ => return Err(Error::Degree("the bracket of two grade 1 fields has one derivation letter per term".into())),
        };
        out.add_scaled(&t, c);
    }
    Ok(normalize_tensor(&out, q))
}

/// `ı_{da} P`: the 1-form `da` contracted into a poly-vector, where
/// `i_{da}(D(b)) = [a = b] e_h(a) ⊗ e_t(a)` and `i_{da}` is a degree -1 double derivation.
pub fn form_contraction(q: &Quiver, a: usize, p: &PolyVector) -> Result<PolyVector> {
    if p.has_kind(Kind::Differential) {
        return Err(Error::Degree("poly-vectors cannot contain differential letters".into()));
    }
    let unit = Tensor::pair(&Elem::idem(q.head(a)), &Elem::idem(q.tail(a)));
    let t = over_terms(p, |w| {
        let mut out = Tensor::zero(2);
        for j in 0..w.len() {
            let l = w.letters()[j];
            if l.kind != Kind::Derivation || l.arrow as usize != a {
                continue;
            }
            let pre = w.slice(0, j);
            let s = sign(pre.degree());
            out.add_scaled(&unit.outer(&Elem::word(pre), &Elem::word(w.slice(j + 1, w.len()))), &s);
        }
        out
    });
    Ok(localize(&circ(&t), q))
}
