//! Extension of a bracket from letter pairs to whole words.
//!
//! For a bracket of degree `d` (0 on the path algebra, -1 on poly-vectors and
//! forms) the second argument is expanded by
//! `{{u, v}} = Σ_q (-1)^{(|u|+d)|v_<q|} v_<q {{u, v_q}} v_>q`, a word in the
//! first slot is moved to the second by
//! `{{a, b}} = -(-1)^{(|a|+d)(|b|+d)} σ_(12) {{b, a}}`, and an inverse letter
//! `ι = (e + c c*)^-1` is handled by `{{x, ι}} = -ι {{x, c c*}} ι`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::One;

use crate::algebra_core::{localize, sign, Elem, Kind, Letter, Perm, Quiver, Tensor, Word, Q};
use crate::error::{Error, Result};

/// Values of a bracket on pairs of letters, neither being an inverse letter.
pub trait LetterTable {
    fn quiver(&self) -> &Quiver;
    /// True for brackets of odd degree.
    fn odd(&self) -> bool;
    fn letters(&self, x: &Letter, y: &Letter) -> Tensor;
    /// Letter kinds the table is defined on (inverse letters are always handled by the engine).
    fn accepts(&self, kind: Kind) -> bool;
}

/// Evaluates a bracket on words and elements from a [`LetterTable`].
///
/// Results are cached per word pair; the cache never changes a result.
pub struct Engine<T: LetterTable> {
    table: T,
    cache: Mutex<HashMap<(Word, Word), Tensor>>,
}

impl<T: LetterTable> Engine<T> {
    pub fn new(table: T) -> Engine<T> {
        Engine { table, cache: Mutex::new(HashMap::new()) }
    }

    pub fn table(&self) -> &T {
        &self.table
    }

    pub fn quiver(&self) -> &Quiver {
        self.table.quiver()
    }

    /// `|x| + d` reduced mod 2.
    fn shifted(&self, deg: usize) -> usize {
        (deg + self.table.odd() as usize) % 2
    }

    fn inverse_pair(&self, l: &Letter) -> Word {
        let q = self.quiver();
        let c = l.arrow as usize;
        let star = q.star(c).expect("inverse letters need a partner arrow");
        Word::from_letters(vec![q.letter(Kind::Arrow, c), q.letter(Kind::Arrow, star)]).expect("c c* composes")
    }

    /// Unnormalized `{{u, v}}` on words.
    pub fn words(&self, u: &Word, v: &Word) -> Tensor {
        if u.is_idem() || v.is_idem() {
            return Tensor::zero(2);
        }
        let key = (u.clone(), v.clone());
        if let Some(t) = self.cache.lock().expect("cache lock").get(&key) {
            return t.clone();
        }
        let t = if v.len() == 1 { self.right_letter(u, &v.letters()[0]) } else { self.expand_right(u, v) };
        self.cache.lock().expect("cache lock").insert(key, t.clone());
        t
    }

    fn expand_right(&self, u: &Word, v: &Word) -> Tensor {
        let su = self.shifted(u.degree());
        let mut out = Tensor::zero(2);
        for q in 0..v.len() {
            let before = v.slice(0, q);
            let after = v.slice(q + 1, v.len());
            let inner = self.words(u, &v.slice(q, q + 1));
            if inner.is_zero() {
                continue;
            }
            let s = sign(su * before.degree());
            out.add_scaled(&inner.outer(&Elem::word(before), &Elem::word(after)), &s);
        }
        out
    }

    fn right_letter(&self, u: &Word, l: &Letter) -> Tensor {
        if l.kind == Kind::Inverse {
            let iota = Elem::letter(*l);
            return -self.words(u, &self.inverse_pair(l)).outer(&iota, &iota);
        }
        if u.len() == 1 && u.letters()[0].kind != Kind::Inverse {
            return self.table.letters(&u.letters()[0], l);
        }
        let lw = Word::letter(*l);
        let s = sign(self.shifted(u.degree()) * self.shifted(l.degree()));
        let swapped = self.words(&lw, u).permute(&Perm(vec![1, 0]), true).expect("arity 2");
        swapped.scale(&-s)
    }

    /// Unnormalized bracket of elements.
    pub fn raw(&self, x: &Elem, y: &Elem) -> Tensor {
        let mut out = Tensor::zero(2);
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                out.add_scaled(&self.words(u, v), &(a * b));
            }
        }
        out
    }

    /// `{{x, y}}` with every slot in localized normal form.
    pub fn bracket(&self, x: &Elem, y: &Elem) -> Tensor {
        normalize_tensor(&self.raw(x, y), self.quiver())
    }

    /// Like [`Engine::bracket`] but rejects letters from another quiver.
    pub fn checked_bracket(&self, x: &Elem, y: &Elem) -> Result<Tensor> {
        for e in [x, y] {
            validate(self.quiver(), e)?;
            if e.terms().any(|(w, _)| w.letters().iter().any(|l| l.kind != Kind::Inverse && !self.table.accepts(l.kind))) {
                return Err(Error::Invalid("letter kind not covered by this bracket".into()));
            }
        }
        Ok(self.bracket(x, y))
    }

    /// `{{a, b_1 ⊗ ... ⊗ b_n}}_L = {{a, b_1}} ⊗ b_2 ⊗ ... ⊗ b_n`.
    pub fn left_action(&self, a: &Elem, t: &Tensor) -> Tensor {
        t.expand_slot(0, 2, None, |w| self.raw(a, &Elem::word(w.clone())))
    }

    /// The triple bracket with graded signs,
    /// `{{a,{{b,c}}}}_L + ε σ_(123){{b,{{c,a}}}}_L + ε' σ_(132){{c,{{a,b}}}}_L`.
    pub fn triple(&self, a: &Elem, b: &Elem, c: &Elem) -> Tensor {
        let mut out = Tensor::zero(3);
        let c123 = Perm::cycles(3, &[&[1, 2, 3]]);
        let c132 = Perm::cycles(3, &[&[1, 3, 2]]);
        for (ua, ka) in a.terms() {
            for (ub, kb) in b.terms() {
                for (uc, kc) in c.terms() {
                    let (ea, eb, ec) = (Elem::word(ua.clone()), Elem::word(ub.clone()), Elem::word(uc.clone()));
                    let (da, db, dc) = (ua.degree(), ub.degree(), uc.degree());
                    let k = ka * kb * kc;
                    let t1 = self.left_action(&ea, &self.raw(&eb, &ec));
                    let t2 = self.left_action(&eb, &self.raw(&ec, &ea)).permute(&c123, true).expect("arity 3");
                    let t3 = self.left_action(&ec, &self.raw(&ea, &eb)).permute(&c132, true).expect("arity 3");
                    out.add_scaled(&t1, &k);
                    out.add_scaled(&t2, &(&k * sign(self.shifted(da) * (db + dc))));
                    out.add_scaled(&t3, &(&k * sign(self.shifted(dc) * (da + db))));
                }
            }
        }
        normalize_tensor(&out, self.quiver())
    }

    /// The associated bracket `m ∘ {{x, y}}`.
    pub fn single(&self, x: &Elem, y: &Elem) -> Elem {
        localize(&self.raw(x, y).multiply_out(), self.quiver())
    }

    /// `{x, -}` applied slotwise to a tensor, with the Koszul sign for odd slots passed over.
    pub fn single_on_tensor(&self, x: &Elem, t: &Tensor) -> Tensor {
        let deg = x.degree().unwrap_or(0);
        let sx = self.shifted(deg);
        let mut out = Tensor::zero(t.arity());
        for i in 0..t.arity() {
            out.add_scaled(&t.map_slot(i, Some(sx), |w| self.single(x, &Elem::word(w.clone()))), &Q::one());
        }
        normalize_tensor(&out, self.quiver())
    }
}

/// Localizes every slot of a tensor.
pub fn normalize_tensor(t: &Tensor, q: &Quiver) -> Tensor {
    let mut out = t.clone();
    for i in 0..t.arity() {
        out = out.map_slot(i, None, |w| localize(&Elem::word(w.clone()), q));
    }
    out
}

/// Rejects letters that do not belong to `q`.
pub fn validate(q: &Quiver, x: &Elem) -> Result<()> {
    for (w, _) in x.terms() {
        if w.src() >= q.n_vertices() || w.tgt() >= q.n_vertices() {
            return Err(Error::MixedQuiver(format!("vertex index {} out of range", w.src().max(w.tgt()))));
        }
        for l in w.letters() {
            q.check_letter(l)?;
        }
    }
    Ok(())
}
