use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::element::{sign, Elem, Q};
use super::word::Word;

/// A permutation of `0..n`, `Perm(s)` sending `i` to `s[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// Builds a permutation of `0..n` from 1-based cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn cycles(n: usize, cycles: &[&[usize]]) -> Perm {
        let mut s: Vec<usize> = (0..n).collect();
        for c in cycles {
            for k in 0..c.len() {
                s[c[k] - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Perm(s)
    }

    /// The cyclic shift `i -> i + k mod n`.
    pub fn shift(n: usize, k: usize) -> Perm {
        Perm((0..n).map(|i| (i + k) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn parity(&self) -> usize {
        let n = self.0.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.0[i] > self.0[j]).count() % 2
    }
}

/// A linear combination of `k`-fold tensors of words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Vec<Word>, Q>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Tensor {
        assert!(arity >= 1, "tensor arity must be positive");
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn from_words(ws: Vec<Word>, c: Q) -> Tensor {
        let mut t = Tensor::zero(ws.len());
        t.add_term(ws, c);
        t
    }

    /// `x_1 ⊗ ... ⊗ x_k` of elements.
    pub fn product(factors: &[&Elem]) -> Tensor {
        let mut t = Tensor::zero(factors.len());
        let mut acc: Vec<(Vec<Word>, Q)> = vec![(Vec::new(), Q::one())];
        for f in factors {
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, k) in f.terms() {
                    let mut v = ws.clone();
                    v.push(w.clone());
                    next.push((v, c * k));
                }
            }
            acc = next;
        }
        for (ws, c) in acc {
            t.add_term(ws, c);
        }
        t
    }

    pub fn pair(x: &Elem, y: &Elem) -> Tensor {
        Tensor::product(&[x, y])
    }

    pub fn add_term(&mut self, ws: Vec<Word>, c: Q) {
        assert_eq!(ws.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ws) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Q) {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        for (ws, k) in &other.terms {
            self.add_term(ws.clone(), k * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Tensor {
        let mut t = Tensor::zero(self.arity);
        t.add_scaled(self, c);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Q)> {
        self.terms.iter()
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms.values().map(num_traits::Signed::abs).max().unwrap_or_else(Q::zero)
    }

    /// Slot `i` collected as an element with the other slots fixed (arity 1 gives the element).
    pub fn to_elem(&self) -> Result<Elem> {
        if self.arity != 1 {
            return Err(Error::Arity { expected: 1, found: self.arity });
        }
        Ok(self.terms.iter().map(|(ws, c)| (ws[0].clone(), c.clone())).collect())
    }

    pub fn from_elem(x: &Elem) -> Tensor {
        Tensor::product(&[x])
    }

    /// `tau_s` when `signed` is false, Koszul-signed `sigma_s` otherwise.
    pub fn permute(&self, s: &Perm, signed: bool) -> Result<Tensor> {
        if s.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, found: s.len() });
        }
        let mut t = Tensor::zero(self.arity);
        for (ws, c) in &self.terms {
            let mut out = ws.clone();
            for (j, w) in ws.iter().enumerate() {
                out[s.0[j]] = w.clone();
            }
            let mut c = c.clone();
            if signed {
                let mut e = 0;
                for j in 0..ws.len() {
                    for k in j + 1..ws.len() {
                        if s.0[j] > s.0[k] {
                            e += ws[j].degree() * ws[k].degree();
                        }
                    }
                }
                c *= sign(e);
            }
            t.add_term(out, c);
        }
        Ok(t)
    }

    /// `x (p ⊗ ... ⊗ q) y = xp ⊗ ... ⊗ qy`.
    pub fn outer(&self, x: &Elem, y: &Elem) -> Tensor {
        let mut t = Tensor::zero(self.arity);
        let last = self.arity - 1;
        for (ws, c) in &self.terms {
            for (u, a) in x.terms() {
                let Some(first) = u.concat(&ws[0]) else { continue };
                for (v, b) in y.terms() {
                    let mut out = ws.clone();
                    out[0] = first.clone();
                    let Some(end) = out[last].concat(v) else { continue };
                    out[last] = end;
                    t.add_term(out, c * a * b);
                }
            }
        }
        t
    }

    pub fn mul_left(&self, x: &Elem) -> Tensor {
        self.outer(x, &self.right_unit())
    }

    pub fn mul_right(&self, y: &Elem) -> Tensor {
        self.outer(&self.left_unit(), y)
    }

    fn left_unit(&self) -> Elem {
        let mut e = Elem::zero();
        for ws in self.terms.keys() {
            let w = Word::idem(ws[0].src());
            if e.coeff(&w).is_zero() {
                e.add_term(w, Q::one());
            }
        }
        e
    }

    fn right_unit(&self) -> Elem {
        let mut e = Elem::zero();
        for ws in self.terms.keys() {
            let w = Word::idem(ws[self.arity - 1].tgt());
            if e.coeff(&w).is_zero() {
                e.add_term(w, Q::one());
            }
        }
        e
    }

    /// Multiplies all slots together in order: `p ⊗ q -> pq`.
    pub fn multiply_out(&self) -> Elem {
        let mut out = Elem::zero();
        for (ws, c) in &self.terms {
            let mut acc = ws[0].clone();
            let mut ok = true;
            for w in &ws[1..] {
                match acc.concat(w) {
                    Some(n) => acc = n,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                out.add_term(acc, c.clone());
            }
        }
        out
    }

    /// Replaces slot `i` by the tensor `f(word)` of arity `img_arity`, splicing its slots in place.
    /// With `deg_f = Some(d)` a Koszul sign `(-1)^{d * (degree of slots before i)}` is applied.
    pub fn expand_slot(&self, i: usize, img_arity: usize, deg_f: Option<usize>, f: impl Fn(&Word) -> Tensor) -> Tensor {
        let arity = self.arity - 1 + img_arity;
        let mut out = Tensor::zero(arity);
        for (ws, c) in &self.terms {
            let img = f(&ws[i]);
            assert_eq!(img.arity, img_arity, "slot image has the wrong arity");
            let s = match deg_f {
                Some(d) => sign(d * ws[..i].iter().map(|w| w.degree()).sum::<usize>()),
                None => Q::one(),
            };
            for (vs, k) in &img.terms {
                let mut nw = Vec::with_capacity(arity);
                nw.extend_from_slice(&ws[..i]);
                nw.extend(vs.iter().cloned());
                nw.extend_from_slice(&ws[i + 1..]);
                out.add_term(nw, c * k * &s);
            }
        }
        out
    }

    /// Applies an element-valued map to slot `i`, keeping the arity.
    pub fn map_slot(&self, i: usize, deg_f: Option<usize>, f: impl Fn(&Word) -> Elem) -> Tensor {
        let mut t = Tensor::zero(self.arity);
        for (ws, c) in &self.terms {
            let s = match deg_f {
                Some(d) => sign(d * ws[..i].iter().map(|w| w.degree()).sum::<usize>()),
                None => Q::one(),
            };
            for (w, k) in f(&ws[i]).terms() {
                let mut nw = ws.clone();
                nw[i] = w.clone();
                t.add_term(nw, c * k * &s);
            }
        }
        t
    }

    /// Multiplies slots `i` and `i + 1` together, lowering the arity by one.
    pub fn merge_slots(&self, i: usize) -> Tensor {
        assert!(i + 1 < self.arity, "merge needs two adjacent slots");
        let mut t = Tensor::zero(self.arity - 1);
        for (ws, c) in &self.terms {
            if let Some(w) = ws[i].concat(&ws[i + 1]) {
                let mut nw = Vec::with_capacity(self.arity - 1);
                nw.extend_from_slice(&ws[..i]);
                nw.push(w);
                nw.extend_from_slice(&ws[i + 2..]);
                t.add_term(nw, c.clone());
            }
        }
        t
    }

    /// Applies a map to every word of every slot (used for relabelings).
    pub fn map_words(&self, f: impl Fn(&Word) -> Elem) -> Tensor {
        let mut t = self.clone();
        for i in 0..self.arity {
            t = t.map_slot(i, None, &f);
        }
        t
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut t = Tensor::zero(self.arity + other.arity);
        for (a, c) in &self.terms {
            for (b, k) in &other.terms {
                let mut ws = a.clone();
                ws.extend(b.iter().cloned());
                t.add_term(ws, c * k);
            }
        }
        t
    }
}

impl Add for Tensor {
    type Output = Tensor;
    fn add(mut self, rhs: Tensor) -> Tensor {
        self.add_scaled(&rhs, &Q::one());
        self
    }
}

impl Sub for Tensor {
    type Output = Tensor;
    fn sub(mut self, rhs: Tensor) -> Tensor {
        self.add_scaled(&rhs, &-Q::one());
        self
    }
}

impl Neg for Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::word::{Kind, Letter};

    fn w(i: u32, kind: Kind) -> Word {
        Word::letter(Letter::new(kind, i, 0, 0))
    }

    #[test]
    fn transposition_and_three_cycle() {
        let (x, y, z) = (w(0, Kind::Arrow), w(1, Kind::Arrow), w(2, Kind::Arrow));
        let t = Tensor::from_words(vec![x.clone(), y.clone()], Q::one());
        let s = t.permute(&Perm::cycles(2, &[&[1, 2]]), false).unwrap();
        assert_eq!(s, Tensor::from_words(vec![y.clone(), x.clone()], Q::one()));
        let t3 = Tensor::from_words(vec![x.clone(), y.clone(), z.clone()], Q::one());
        let r = t3.permute(&Perm::cycles(3, &[&[1, 2, 3]]), false).unwrap();
        assert_eq!(r, Tensor::from_words(vec![z, x, y], Q::one()));
    }

    #[test]
    fn odd_transposition_sign() {
        let (u, v) = (w(0, Kind::Derivation), w(1, Kind::Derivation));
        let t = Tensor::from_words(vec![u.clone(), v.clone()], Q::one());
        let s = t.permute(&Perm::cycles(2, &[&[1, 2]]), true).unwrap();
        assert_eq!(s, Tensor::from_words(vec![v, u], -Q::one()));
    }

    #[test]
    fn size_mismatch() {
        let t = Tensor::from_words(vec![Word::idem(0)], Q::one());
        assert!(t.permute(&Perm::identity(2), false).is_err());
    }

    #[test]
    fn shift_is_cycle() {
        assert_eq!(Perm::shift(3, 1), Perm::cycles(3, &[&[1, 2, 3]]));
    }
}
