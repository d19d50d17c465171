//! Dimension vectors, points of representation spaces and evaluation of
//! path-algebra elements as block matrices.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;

use super::matrix::Mat;
use crate::algebra_core::{fmt_tensor, rat, Elem, Kind, Letter, Quiver, Tensor, Word, Q};
use crate::error::{Error, Result};
use crate::sample;

/// Block sizes `α_i`; index `p` lies in block `φ(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimVector {
    alpha: Vec<usize>,
    offsets: Vec<usize>,
}

impl DimVector {
    pub fn new(alpha: &[usize]) -> Result<DimVector> {
        if alpha.contains(&0) {
            return Err(Error::Invalid("dimension vector entries must be positive".into()));
        }
        let mut offsets = Vec::with_capacity(alpha.len());
        let mut acc = 0;
        for &a in alpha {
            offsets.push(acc);
            acc += a;
        }
        Ok(DimVector { alpha: alpha.to_vec(), offsets })
    }

    /// Parses `"2,1"`.
    pub fn parse(s: &str) -> Result<DimVector> {
        let alpha: std::result::Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
        DimVector::new(&alpha.map_err(|e| Error::Invalid(format!("dimension vector `{}`: {}", s, e)))?)
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    /// `|α|`.
    pub fn total(&self) -> usize {
        self.alpha.iter().sum()
    }

    pub fn block(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v] + self.alpha[v]
    }

    /// `φ(p)`.
    pub fn phi(&self, p: usize) -> usize {
        (0..self.alpha.len()).rev().find(|&v| self.offsets[v] <= p).expect("index in range")
    }

    pub fn render(&self) -> String {
        self.alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// A point of `Rep(A, α)`: one matrix per arrow, placed in block `(t(a), h(a))`,
/// and the inverse of `1 + X(a) X(a*)` on block `t(a)` for every inverse letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepPoint {
    quiver: Quiver,
    dims: DimVector,
    arrows: Vec<Mat>,
    inverses: Vec<Option<Mat>>,
}

/// Attempts made by [`random_point`] before giving up.
pub const MAX_ATTEMPTS: u32 = 100;

fn small_rational(r: &mut impl Rng) -> Q {
    rat(r.gen_range(-7..=7), r.gen_range(1..=7))
}

impl RepPoint {
    /// Builds a point from the arrow blocks (`α_t(a) × α_h(a)`, given as rows).
    pub fn from_blocks(q: &Quiver, dims: DimVector, blocks: &[Vec<Vec<Q>>]) -> Result<RepPoint> {
        if dims.alpha().len() != q.n_vertices() {
            return Err(Error::Arity { expected: q.n_vertices(), found: dims.alpha().len() });
        }
        if blocks.len() != q.n_arrows() {
            return Err(Error::Arity { expected: q.n_arrows(), found: blocks.len() });
        }
        let n = dims.total();
        let mut arrows = Vec::with_capacity(q.n_arrows());
        for (a, b) in blocks.iter().enumerate() {
            let (rows, cols) = (dims.block(q.tail(a)), dims.block(q.head(a)));
            if b.len() != rows.len() || b.iter().any(|r| r.len() != cols.len()) {
                return Err(Error::Invalid(format!("block of arrow `{}` has the wrong shape", q.arrow(a).id)));
            }
            let mut m = Mat::zeros(n);
            for (bi, i) in rows.clone().enumerate() {
                for (bj, j) in cols.clone().enumerate() {
                    m.set(i, j, b[bi][bj].clone());
                }
            }
            arrows.push(m);
        }
        RepPoint::assemble(q, dims, arrows)
    }

    fn assemble(q: &Quiver, dims: DimVector, arrows: Vec<Mat>) -> Result<RepPoint> {
        let mut p = RepPoint { quiver: q.clone(), dims, arrows, inverses: vec![None; q.n_arrows()] };
        for a in 0..q.n_arrows() {
            if !q.has_inverse(a) {
                continue;
            }
            let s = q.star(a).expect("paired");
            let block = p.idem(q.tail(a));
            let m = block.clone() + &p.arrows[a] * &p.arrows[s];
            // invert on the block: add the identity elsewhere, then cut back
            let full = m + (Mat::identity(p.dims.total()) - block.clone());
            let inv = full.inverse().ok_or(Error::Singular(1))?;
            p.inverses[a] = Some(&(&block * &inv) * &block);
        }
        Ok(p)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn n(&self) -> usize {
        self.dims.total()
    }

    /// `X(e_v)`.
    pub fn idem(&self, v: usize) -> Mat {
        let mut m = Mat::zeros(self.n());
        for i in self.dims.block(v) {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn arrow_matrix(&self, a: usize) -> &Mat {
        &self.arrows[a]
    }

    fn letter(&self, l: &Letter) -> Result<&Mat> {
        match l.kind {
            Kind::Arrow => Ok(&self.arrows[l.arrow as usize]),
            Kind::Inverse => self.inverses[l.arrow as usize]
                .as_ref()
                .ok_or_else(|| Error::Invalid(format!("no inverse for arrow `{}`", self.quiver.arrow(l.arrow as usize).id))),
            Kind::Derivation | Kind::Differential => Err(Error::Degree("only degree 0 words have matrix values".into())),
        }
    }

    /// `X(w)`.
    pub fn eval_word(&self, w: &Word) -> Result<Mat> {
        let mut m = self.idem(w.src());
        for l in w.letters() {
            m = &m * self.letter(l)?;
        }
        Ok(m)
    }

    /// `X(x)`, a `B`-algebra map.
    pub fn eval(&self, x: &Elem) -> Result<Mat> {
        let mut out = Mat::zeros(self.n());
        for (w, c) in x.terms() {
            out = out + self.eval_word(w)?.scale(c);
        }
        Ok(out)
    }

    /// Terms of a tensor as coefficient and per-slot matrices.
    pub fn eval_tensor(&self, t: &Tensor) -> Result<Vec<(Q, Vec<Mat>)>> {
        let mut cache: HashMap<&Word, Mat> = HashMap::new();
        let mut out = Vec::with_capacity(t.len());
        for (ws, c) in t.terms() {
            let mut ms = Vec::with_capacity(ws.len());
            for w in ws {
                if !cache.contains_key(w) {
                    let m = self.eval_word(w).map_err(|e| Error::Degree(format!("{} in {}", e, fmt_tensor(&self.quiver, t))))?;
                    cache.insert(w, m);
                }
                ms.push(cache[w].clone());
            }
            out.push((c.clone(), ms));
        }
        Ok(out)
    }

    /// The point `g^-1 X g` for a block-diagonal invertible `g`.
    pub fn conjugate(&self, g: &Mat) -> Result<RepPoint> {
        let gi = g.inverse().ok_or_else(|| Error::Invalid("gauge matrix is singular".into()))?;
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.dims.phi(i) != self.dims.phi(j) && !g.get(i, j).is_zero() {
                    return Err(Error::Invalid("gauge matrix is not block diagonal".into()));
                }
            }
        }
        let arrows = self.arrows.iter().map(|m| &(&gi * m) * g).collect();
        RepPoint::assemble(&self.quiver, self.dims.clone(), arrows)
    }

    /// Arrow blocks as `id = [[...]]` lines, in arrow order.
    pub fn render(&self) -> String {
        let q = &self.quiver;
        (0..q.n_arrows())
            .map(|a| {
                let (rows, cols) = (self.dims.block(q.tail(a)), self.dims.block(q.head(a)));
                let body: Vec<String> = rows
                    .map(|i| {
                        format!("[{}]", cols.clone().map(|j| crate::algebra_core::fmt_q(self.arrows[a].get(i, j))).collect::<Vec<_>>().join(", "))
                    })
                    .collect();
                format!("{} = [{}]", q.arrow(a).id, body.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A seeded point with entries `p/q`, `|p| <= 7`, `1 <= q <= 7`. Draws again
/// from the same stream while some `1 + X(a) X(a*)` is singular.
pub fn random_point(q: &Quiver, dims: &DimVector, seed: u64) -> Result<RepPoint> {
    if dims.alpha().len() != q.n_vertices() {
        return Err(Error::Arity { expected: q.n_vertices(), found: dims.alpha().len() });
    }
    let mut r = sample::rng(seed);
    for _ in 0..MAX_ATTEMPTS {
        let blocks: Vec<Vec<Vec<Q>>> = (0..q.n_arrows())
            .map(|a| {
                let (rows, cols) = (dims.alpha()[q.tail(a)], dims.alpha()[q.head(a)]);
                (0..rows).map(|_| (0..cols).map(|_| small_rational(&mut r)).collect()).collect()
            })
            .collect();
        match RepPoint::from_blocks(q, dims.clone(), &blocks) {
            Ok(p) => return Ok(p),
            Err(Error::Singular(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Singular(MAX_ATTEMPTS))
}

/// A seeded invertible block-diagonal matrix.
pub fn random_gauge(dims: &DimVector, seed: u64) -> Mat {
    let mut r = sample::rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    loop {
        let mut g = Mat::zeros(dims.total());
        for v in 0..dims.alpha().len() {
            for i in dims.block(v) {
                for j in dims.block(v) {
                    g.set(i, j, small_rational(&mut r));
                }
            }
        }
        if g.inverse().is_some() {
            return g;
        }
    }
}

/// `Σ_i X(x)_ii`.
pub fn trace_value(p: &RepPoint, x: &Elem) -> Result<Q> {
    Ok(p.eval(x)?.trace())
}
