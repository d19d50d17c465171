//! The Schouten bracket of two grade-1 poly-vectors written through their
//! actions, `(δ⊗1)Δ - (1⊗Δ)δ` and `(1⊗δ)Δ - (Δ⊗1)δ`. Used only to cross-check
//! the generator-table route.

use crate::algebra_core::{Elem, Kind, Quiver, Tensor, Q};
use crate::brackets::normalize_tensor;
use crate::error::{Error, Result};

use super::{PolyVector, SimpleDerivation};

fn derivations(d: &PolyVector) -> Result<Vec<(SimpleDerivation, Q)>> {
    d.terms()
        .map(|(w, c)| {
            SimpleDerivation::from_word(w).map(|s| (s, c.clone())).ok_or_else(|| Error::Degree("expected grade 1".into()))
        })
        .collect()
}

fn act(q: &Quiver, ds: &[(SimpleDerivation, Q)], x: &Elem) -> Tensor {
    let mut out = Tensor::zero(2);
    for (d, c) in ds {
        out.add_scaled(&d.apply(q, x), c);
    }
    out
}

/// `((δ⊗1)Δ - (1⊗Δ)δ)(x)`.
pub fn intrinsic_left(q: &Quiver, delta: &PolyVector, big: &PolyVector, x: &Elem) -> Result<Tensor> {
    let d = derivations(delta)?;
    let b = derivations(big)?;
    let first = act(q, &b, x).expand_slot(0, 2, None, |w| act(q, &d, &Elem::word(w.clone())));
    let second = act(q, &d, x).expand_slot(1, 2, None, |w| act(q, &b, &Elem::word(w.clone())));
    Ok(normalize_tensor(&(first - second), q))
}

/// `((1⊗δ)Δ - (Δ⊗1)δ)(x)`.
pub fn intrinsic_right(q: &Quiver, delta: &PolyVector, big: &PolyVector, x: &Elem) -> Result<Tensor> {
    let d = derivations(delta)?;
    let b = derivations(big)?;
    let first = act(q, &b, x).expand_slot(1, 2, None, |w| act(q, &d, &Elem::word(w.clone())));
    let second = act(q, &d, x).expand_slot(0, 2, None, |w| act(q, &b, &Elem::word(w.clone())));
    Ok(normalize_tensor(&(first - second), q))
}

/// Splits a grade-1 tensor into the part with the derivation in the first slot
/// and the part with it in the second, each evaluated on `x` as
/// `D(x)' ⊗ w ⊗ D(x)''`.
pub fn split_left_right(q: &Quiver, t: &Tensor, x: &Elem) -> Result<(Tensor, Tensor)> {
    let mut left = Tensor::zero(3);
    let mut right = Tensor::zero(3);
    for (ws, c) in t.terms() {
        let g0 = ws[0].count_kind(Kind::Derivation);
        let g1 = ws[1].count_kind(Kind::Derivation);
        let (dword, w, target) = match (g0, g1) {
            (1, 0) => (&ws[0], &ws[1], &mut left),
            (0, 1) => (&ws[1], &ws[0], &mut right),
            _ => return Err(Error::Degree("expected one derivation letter per tensor term".into())),
        };
        let d = SimpleDerivation::from_word(dword).expect("one derivation letter");
        let val = d.apply(q, x);
        for (vs, k) in val.terms() {
            target.add_term(vec![vs[0].clone(), w.clone(), vs[1].clone()], c * k);
        }
    }
    Ok((normalize_tensor(&left, q), normalize_tensor(&right, q)))
}
