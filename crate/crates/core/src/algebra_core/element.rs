use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::word::{Kind, Letter, Word};

/// Exact rational coefficients.
pub type Q = BigRational;

pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A finite linear combination of words with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    terms: BTreeMap<Word, Q>,
}

impl Elem {
    pub fn zero() -> Elem {
        Elem::default()
    }

    pub fn idem(v: usize) -> Elem {
        Elem::word(Word::idem(v))
    }

    pub fn word(w: Word) -> Elem {
        Elem::term(w, Q::one())
    }

    pub fn letter(l: Letter) -> Elem {
        Elem::word(Word::letter(l))
    }

    pub fn term(w: Word, c: Q) -> Elem {
        let mut e = Elem::zero();
        e.add_term(w, c);
        e
    }

    /// Sum of the idempotents of all `n` vertices (the unit).
    pub fn one(n: usize) -> Elem {
        let mut e = Elem::zero();
        for v in 0..n {
            e.add_term(Word::idem(v), Q::one());
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
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

    pub fn add_scaled(&mut self, other: &Elem, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (w, k) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Elem {
        if c.is_zero() {
            return Elem::zero();
        }
        Elem { terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    /// Concatenation product; incomposable pairs vanish.
    pub fn mul(&self, other: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(w) = u.concat(v) {
                    out.add_term(w, a * b);
                }
            }
        }
        out
    }

    pub fn mul_word_left(&self, u: &Word) -> Elem {
        let mut out = Elem::zero();
        for (v, b) in &self.terms {
            if let Some(w) = u.concat(v) {
                out.add_term(w, b.clone());
            }
        }
        out
    }

    pub fn mul_word_right(&self, u: &Word) -> Elem {
        let mut out = Elem::zero();
        for (v, b) in &self.terms {
            if let Some(w) = v.concat(u) {
                out.add_term(w, b.clone());
            }
        }
        out
    }

    /// `x^n` for `n >= 1`.
    pub fn pow(&self, n: usize) -> Elem {
        assert!(n >= 1, "pow needs n >= 1");
        let mut out = self.clone();
        for _ in 1..n {
            out = out.mul(self);
        }
        out
    }

    /// Graded commutator `xy - (-1)^{|x||y|} yx` for homogeneous inputs.
    pub fn graded_commutator(&self, other: &Elem) -> Elem {
        let s = sign(self.degree().unwrap_or(0) * other.degree().unwrap_or(0));
        self.mul(other) - other.mul(self).scale(&s)
    }

    /// Common degree of all words, `None` if inhomogeneous; zero is degree 0.
    pub fn degree(&self) -> Option<usize> {
        homogeneous(self.terms.keys().map(|w| w.degree()))
    }

    /// Common number of derivation letters, `None` if inhomogeneous.
    pub fn grade(&self) -> Option<usize> {
        homogeneous(self.terms.keys().map(|w| w.count_kind(Kind::Derivation)))
    }

    /// Common number of differential letters, `None` if inhomogeneous.
    pub fn form_degree(&self) -> Option<usize> {
        homogeneous(self.terms.keys().map(|w| w.count_kind(Kind::Differential)))
    }

    /// Terms whose words satisfy a predicate.
    pub fn filter(&self, f: impl Fn(&Word) -> bool) -> Elem {
        Elem { terms: self.terms.iter().filter(|(w, _)| f(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// `e_i x e_j`.
    pub fn corner(&self, i: usize, j: usize) -> Elem {
        self.filter(|w| w.src() == i && w.tgt() == j)
    }

    pub fn has_kind(&self, k: Kind) -> bool {
        self.terms.keys().any(|w| w.letters().iter().any(|l| l.kind == k))
    }

    /// Linear extension of a word map.
    pub fn map_words(&self, f: impl Fn(&Word) -> Elem) -> Elem {
        let mut out = Elem::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }
}

fn homogeneous(mut it: impl Iterator<Item = usize>) -> Option<usize> {
    let first = match it.next() {
        Some(d) => d,
        None => return Some(0),
    };
    it.all(|d| d == first).then_some(first)
}

impl Add for Elem {
    type Output = Elem;
    fn add(mut self, rhs: Elem) -> Elem {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Sub for Elem {
    type Output = Elem;
    fn sub(mut self, rhs: Elem) -> Elem {
        for (w, c) in rhs.terms {
            self.add_term(w, -c);
        }
        self
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem { terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect() }
    }
}

impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.clone() + rhs.clone()
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        Elem::mul(self, rhs)
    }
}

impl FromIterator<(Word, Q)> for Elem {
    fn from_iter<I: IntoIterator<Item = (Word, Q)>>(iter: I) -> Self {
        let mut e = Elem::zero();
        for (w, c) in iter {
            e.add_term(w, c);
        }
        e
    }
}
