//! The n-bracket `{{-, ..., -}}_P` of a grade-n poly-vector.
//!
//! For a word `x_0 D(b_1) x_1 ... D(b_n) x_n` put `δ_1 = x_0 D(b_1) x_1` and
//! `δ_k = D(b_k) x_k`. Then
//! `~{{a_1..a_n}} = δ_n(a_n)' δ_1(a_1)'' ⊗ δ_1(a_1)' δ_2(a_2)'' ⊗ ... ⊗ δ_{n-1}(a_{n-1})' δ_n(a_n)''`
//! and the bracket is the signed cyclic sum `Σ_i (-1)^{(n-1)i} τ^i ~ τ^{-i}`.

use crate::algebra_core::{sign, Elem, Kind, Perm, Quiver, Tensor, Word};
use crate::brackets::normalize_tensor;
use crate::error::{Error, Result};

use super::{PolyVector, SimpleDerivation};

pub struct NBracket<'q> {
    quiver: &'q Quiver,
    arity: usize,
    /// Per word: coefficient and its factors `δ_1..δ_n`.
    factors: Vec<(crate::algebra_core::Q, Vec<SimpleDerivation>)>,
}

impl<'q> NBracket<'q> {
    /// The bracket of a nonzero homogeneous poly-vector of grade `n >= 1`.
    pub fn new(quiver: &'q Quiver, p: &PolyVector) -> Result<NBracket<'q>> {
        let arity = p.grade().ok_or_else(|| Error::Degree("poly-vector is not homogeneous".into()))?;
        if arity == 0 {
            return Err(Error::Degree("grade 0 poly-vector has no bracket".into()));
        }
        NBracket::with_arity(quiver, p, arity)
    }

    /// Like [`NBracket::new`] but with the arity fixed, so that zero is accepted.
    pub fn with_arity(quiver: &'q Quiver, p: &PolyVector, arity: usize) -> Result<NBracket<'q>> {
        if arity == 0 {
            return Err(Error::Degree("brackets need at least one argument".into()));
        }
        if !p.is_zero() && p.grade() != Some(arity) {
            return Err(Error::Degree(format!("expected a grade {} poly-vector", arity)));
        }
        if p.has_kind(Kind::Differential) {
            return Err(Error::Degree("differential letters in a poly-vector".into()));
        }
        let mut factors = Vec::new();
        for (w, c) in p.terms() {
            let pos: Vec<usize> = (0..w.len()).filter(|&k| w.letters()[k].kind == Kind::Derivation).collect();
            let mut ds = Vec::with_capacity(arity);
            for (k, &at) in pos.iter().enumerate() {
                let end = pos.get(k + 1).copied().unwrap_or(w.len());
                let left = if k == 0 { w.slice(0, at) } else { Word::idem(w.letters()[at].src as usize) };
                ds.push(SimpleDerivation { left, arrow: w.letters()[at].arrow as usize, right: w.slice(at + 1, end) });
            }
            factors.push((c.clone(), ds));
        }
        Ok(NBracket { quiver, arity, factors })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn tilde(&self, ds: &[SimpleDerivation], args: &[Elem]) -> Tensor {
        let n = ds.len();
        let vals: Vec<Tensor> = ds.iter().zip(args).map(|(d, a)| d.apply(self.quiver, a)).collect();
        let mut out = Tensor::zero(n);
        let mut choice: Vec<(Vec<Word>, crate::algebra_core::Q)> = vec![(Vec::new(), num_traits::One::one())];
        for v in &vals {
            let mut next = Vec::new();
            for (picked, c) in &choice {
                for (ws, k) in v.terms() {
                    let mut p = picked.clone();
                    p.push(ws[0].clone());
                    p.push(ws[1].clone());
                    next.push((p, c * k));
                }
            }
            choice = next;
        }
        for (picked, c) in choice {
            // picked[2k] = δ_{k+1}(a_{k+1})', picked[2k+1] = δ_{k+1}(a_{k+1})''
            let mut slots = Vec::with_capacity(n);
            let mut ok = true;
            for s in 0..n {
                let (prime, dprime) = if s == 0 { (&picked[2 * (n - 1)], &picked[1]) } else { (&picked[2 * (s - 1)], &picked[2 * s + 1]) };
                match prime.concat(dprime) {
                    Some(w) => slots.push(w),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                out.add_term(slots, c);
            }
        }
        out
    }

    /// Evaluates the bracket on degree 0 arguments; the result is normalized.
    pub fn eval(&self, args: &[Elem]) -> Result<Tensor> {
        let n = self.arity;
        if args.len() != n {
            return Err(Error::Arity { expected: n, found: args.len() });
        }
        if args.iter().any(|a| a.degree() != Some(0)) {
            return Err(Error::Degree("bracket arguments must have degree 0".into()));
        }
        let mut out = Tensor::zero(n);
        for i in 0..n {
            let rotated: Vec<Elem> = (0..n).map(|k| args[(k + i) % n].clone()).collect();
            let mut t = Tensor::zero(n);
            for (c, ds) in &self.factors {
                t.add_scaled(&self.tilde(ds, &rotated), c);
            }
            let t = t.permute(&Perm::shift(n, i), false)?;
            out.add_scaled(&t, &sign((n - 1) * i));
        }
        Ok(normalize_tensor(&out, self.quiver))
    }
}
