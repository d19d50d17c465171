//! Functions, brackets and poly-vector fields on representation spaces,
//! evaluated exactly at a point.

use num_traits::Zero;

use super::matrix::Mat;
use super::point::RepPoint;
use crate::algebra_core::{Elem, Kind, Perm, Word, Q};
use crate::brackets::{Engine, LetterTable};
use crate::error::{Error, Result};
use crate::polyvectors::{apply_derivation, schouten, PolyVector};

/// A dense array with `rank` indices, each in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexArray {
    n: usize,
    rank: usize,
    data: Vec<Q>,
}

impl IndexArray {
    pub fn zeros(n: usize, rank: usize) -> IndexArray {
        IndexArray { n, rank, data: vec![Q::zero(); n.pow(rank as u32)] }
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank, "index rank");
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Q {
        &self.data[self.offset(idx)]
    }

    pub fn add_at(&mut self, idx: &[usize], v: &Q) {
        let o = self.offset(idx);
        self.data[o] += v;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Every index tuple, in lexicographic order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.data.len()).map(move |mut k| {
            let mut idx = vec![0; self.rank];
            for slot in (0..self.rank).rev() {
                idx[slot] = k % self.n;
                k /= self.n;
            }
            idx
        })
    }

    /// The first nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Q)> {
        self.indices().zip(self.data.iter()).find(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone()))
    }

    pub fn sub(&self, other: &IndexArray) -> IndexArray {
        assert_eq!((self.n, self.rank), (other.n, other.rank), "shape mismatch");
        IndexArray { n: self.n, rank: self.rank, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }
}

/// `B[i,j,u,v] = Σ t'_{uj} t''_{iv}` for an evaluated 2-tensor.
fn pairing(n: usize, terms: &[(Q, Vec<Mat>)]) -> IndexArray {
    let mut out = IndexArray::zeros(n, 4);
    for (c, ms) in terms {
        let (m1, m2) = (&ms[0], &ms[1]);
        for u in 0..n {
            for j in 0..n {
                let x = m1.get(u, j);
                if x.is_zero() {
                    continue;
                }
                let cx = c * x;
                for i in 0..n {
                    for v in 0..n {
                        let y = m2.get(i, v);
                        if !y.is_zero() {
                            out.add_at(&[i, j, u, v], &(&cx * y));
                        }
                    }
                }
            }
        }
    }
    out
}

fn require_degree0(x: &Elem) -> Result<()> {
    if x.is_zero() || x.degree() == Some(0) {
        Ok(())
    } else {
        Err(Error::Degree("coordinate functions come from degree 0 elements".into()))
    }
}

/// `{a_ij, b_uv} = {{a,b}}'_{uj} {{a,b}}''_{iv}`, indexed `[i, j, u, v]`.
pub fn induced_bracket_tensor<T: LetterTable>(engine: &Engine<T>, a: &Elem, b: &Elem, p: &RepPoint) -> Result<IndexArray> {
    require_degree0(a)?;
    require_degree0(b)?;
    let t = engine.bracket(a, b);
    Ok(pairing(p.n(), &p.eval_tensor(&t)?))
}

/// The Lie-Poisson bracket of the trace pairing on matrices:
/// `{t_ij, t_uv} = t_uj δ_iv - δ_uj t_iv`.
pub fn lie_poisson_tensor(t: &Mat) -> IndexArray {
    let n = t.dim();
    let mut out = IndexArray::zeros(n, 4);
    for i in 0..n {
        for j in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let mut x = Q::zero();
                    if i == v {
                        x += t.get(u, j);
                    }
                    if u == j {
                        x -= t.get(i, v);
                    }
                    out.add_at(&[i, j, u, v], &x);
                }
            }
        }
    }
    out
}

/// Both sides of the Jacobi identity on coordinate functions, indexed
/// `[p, q, r, s, u, v]` for `a_pq`, `b_rs`, `c_uv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiEval {
    /// `{a,{b,c}} + {b,{c,a}} + {c,{a,b}}`, by nested evaluation.
    pub lhs: IndexArray,
    /// The triple-bracket expression.
    pub rhs: IndexArray,
}

impl JacobiEval {
    pub fn residual(&self) -> IndexArray {
        self.lhs.sub(&self.rhs)
    }
}

/// `{x_pq, {y_rs, z_uv}}` indexed `[p, q, r, s, u, v]`.
fn nested<T: LetterTable>(engine: &Engine<T>, x: &Elem, y: &Elem, z: &Elem, p: &RepPoint) -> Result<IndexArray> {
    let n = p.n();
    let t = engine.bracket(y, z);
    let mut out = IndexArray::zeros(n, 6);
    for ((ws, c), (_, ms)) in t.terms().zip(p.eval_tensor(&t)?) {
        // {x_pq, w'_us} and {x_pq, w''_rv}
        let first = induced_bracket_tensor(engine, x, &Elem::word(ws[0].clone()), p)?;
        let second = induced_bracket_tensor(engine, x, &Elem::word(ws[1].clone()), p)?;
        for idx in out.indices().collect::<Vec<_>>() {
            let [pp, q, r, s, u, v] = [idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]];
            let a = first.get(&[pp, q, u, s]) * ms[1].get(r, v);
            let b = ms[0].get(u, s) * second.get(&[pp, q, r, v]);
            let val = c * (a + b);
            if !val.is_zero() {
                out.add_at(&idx, &val);
            }
        }
    }
    Ok(out)
}

/// Evaluates both sides of the Jacobi identity for the induced bracket; the
/// residual is zero for every table, and the left side vanishes for double
/// Poisson tables.
pub fn jacobi_residual<T: LetterTable>(engine: &Engine<T>, a: &Elem, b: &Elem, c: &Elem, p: &RepPoint) -> Result<JacobiEval> {
    if engine.table().odd() {
        return Err(Error::Unsupported("the Jacobi evaluation is for even double brackets".into()));
    }
    for x in [a, b, c] {
        require_degree0(x)?;
    }
    let n = p.n();
    let abc = nested(engine, a, b, c, p)?;
    let bca = nested(engine, b, c, a, p)?;
    let cab = nested(engine, c, a, b, p)?;
    let mut lhs = IndexArray::zeros(n, 6);
    for idx in lhs.indices().collect::<Vec<_>>() {
        let [pp, q, r, s, u, v] = [idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]];
        let val = abc.get(&idx) + bca.get(&[r, s, u, v, pp, q]) + cab.get(&[u, v, pp, q, r, s]);
        lhs.add_at(&idx, &val);
    }
    let mut rhs = IndexArray::zeros(n, 6);
    for (t, positive) in [(engine.triple(a, b, c), true), (engine.triple(a, c, b), false)] {
        for (k, ms) in p.eval_tensor(&t)? {
            for idx in rhs.indices().collect::<Vec<_>>() {
                let [pp, q, r, s, u, v] = [idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]];
                let val = if positive {
                    ms[0].get(u, q) * ms[1].get(pp, s) * ms[2].get(r, v)
                } else {
                    -(ms[0].get(r, q) * ms[1].get(pp, v) * ms[2].get(u, s))
                };
                if !val.is_zero() {
                    rhs.add_at(&idx, &(&k * val));
                }
            }
        }
    }
    Ok(JacobiEval { lhs, rhs })
}

/// `{tr a, tr b}` from the induced bracket and `tr {a, b}` from the associated bracket.
pub fn trace_bracket<T: LetterTable>(engine: &Engine<T>, a: &Elem, b: &Elem, p: &RepPoint) -> Result<(Q, Q)> {
    let bt = induced_bracket_tensor(engine, a, b, p)?;
    let n = p.n();
    let mut lhs = Q::zero();
    for i in 0..n {
        for u in 0..n {
            lhs += bt.get(&[i, i, u, u]);
        }
    }
    Ok((lhs, p.eval(&engine.single(a, b))?.trace()))
}

/// The coordinate function `x_{row, col}` of a degree 0 element `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coord {
    pub elem: Elem,
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub fn new(elem: Elem, row: usize, col: usize) -> Coord {
        Coord { elem, row, col }
    }

    pub fn value(&self, p: &RepPoint) -> Result<Q> {
        Ok(p.eval(&self.elem)?.get(self.row, self.col).clone())
    }
}

/// The matrix `V[i][j] = δ_ij(f)` of a grade-1 poly-vector applied to a coordinate function.
pub fn vector_field_matrix(p: &RepPoint, delta: &PolyVector, f: &Coord) -> Result<Mat> {
    require_degree0(&f.elem)?;
    let t = apply_derivation(p.quiver(), delta, &f.elem)?;
    let n = p.n();
    let mut out = Mat::zeros(n);
    for (c, ms) in p.eval_tensor(&t)? {
        for i in 0..n {
            let y = ms[1].get(i, f.col);
            if y.is_zero() {
                continue;
            }
            for j in 0..n {
                let x = ms[0].get(f.row, j);
                if !x.is_zero() {
                    let cur = out.get(i, j) + &c * x * y;
                    out.set(i, j, cur);
                }
            }
        }
    }
    Ok(out)
}

/// Splits a word with `k` derivation letters into `k` grade-1 factors
/// `x_0 D(b_1) | x_1 D(b_2) | ... | x_{k-1} D(b_k) x_k`.
fn grade_one_factors(w: &Word) -> Vec<Word> {
    let pos: Vec<usize> = (0..w.len()).filter(|&k| w.letters()[k].kind == Kind::Derivation).collect();
    let mut out = Vec::with_capacity(pos.len());
    let mut lo = 0;
    for (m, &k) in pos.iter().enumerate() {
        let hi = if m + 1 == pos.len() { w.len() } else { k + 1 };
        out.push(w.slice(lo, hi));
        lo = hi;
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for k in 0..n {
            let mut p = rest.clone();
            p.insert(k, n - 1);
            out.push(p);
        }
    }
    out
}

/// The matrix-valued poly-vector field `X(P)` applied to coordinate functions:
/// `X(δ_1 ... δ_k) = X(δ_1) ... X(δ_k)` with the wedge product
/// `(ξ_1 ∧ ... ∧ ξ_k)(f_1, ..., f_k) = Σ_σ sgn σ Π_m ξ_m(f_σ(m))`.
pub fn polyvector_matrix(p: &RepPoint, poly: &PolyVector, coords: &[Coord]) -> Result<Mat> {
    let k = coords.len();
    if !poly.is_zero() && poly.grade() != Some(k) {
        return Err(Error::Arity { expected: poly.grade().unwrap_or(0), found: k });
    }
    let n = p.n();
    let perms = permutations(k);
    let mut out = Mat::zeros(n);
    for (w, c) in poly.terms() {
        if k == 0 {
            out = out + p.eval_word(w)?.scale(c);
            continue;
        }
        let factors = grade_one_factors(w);
        let mut vs: Vec<Vec<Mat>> = Vec::with_capacity(k);
        for f in &factors {
            let fe = Elem::word(f.clone());
            vs.push(coords.iter().map(|co| vector_field_matrix(p, &fe, co)).collect::<Result<_>>()?);
        }
        for s in &perms {
            let sgn = if Perm(s.clone()).parity() == 0 { c.clone() } else { -c.clone() };
            let mut m = vs[0][s[0]].clone();
            for (mi, &si) in s.iter().enumerate().skip(1) {
                m = &m * &vs[mi][si];
            }
            out = out + m.scale(&sgn);
        }
    }
    Ok(out)
}

/// `X(P)_ij(f_1, ..., f_k)`.
pub fn polyvector_entry(p: &RepPoint, poly: &PolyVector, i: usize, j: usize, coords: &[Coord]) -> Result<Q> {
    Ok(polyvector_matrix(p, poly, coords)?.get(i, j).clone())
}

/// `tr(P)(f_1, ..., f_k)`.
pub fn polyvector_trace(p: &RepPoint, poly: &PolyVector, coords: &[Coord]) -> Result<Q> {
    Ok(polyvector_matrix(p, poly, coords)?.trace())
}

/// A polynomial in coordinate functions.
type Poly = Vec<(Q, Vec<Coord>)>;

/// `δ_ij(f)` as a polynomial: `Σ δ(f)'_{f.row, j} δ(f)''_{i, f.col}`.
fn field_on_coord_poly(p: &RepPoint, delta: &PolyVector, i: usize, j: usize, f: &Coord) -> Result<Poly> {
    let t = apply_derivation(p.quiver(), delta, &f.elem)?;
    Ok(t.terms()
        .map(|(ws, c)| (c.clone(), vec![Coord::new(Elem::word(ws[0].clone()), f.row, j), Coord::new(Elem::word(ws[1].clone()), i, f.col)]))
        .collect())
}

/// `δ_ij` applied to a polynomial, by the Leibniz rule, evaluated at `p`.
fn field_on_poly(p: &RepPoint, delta: &PolyVector, i: usize, j: usize, poly: &Poly) -> Result<Q> {
    let mut out = Q::zero();
    for (c, mono) in poly {
        let values: Vec<Q> = mono.iter().map(|co| co.value(p)).collect::<Result<_>>()?;
        for (k, co) in mono.iter().enumerate() {
            let d = vector_field_matrix(p, delta, co)?.get(i, j).clone();
            if d.is_zero() {
                continue;
            }
            let rest = values.iter().enumerate().filter(|&(l, _)| l != k).fold(d, |acc, (_, v)| acc * v);
            out += c * rest;
        }
    }
    Ok(out)
}

/// `[δ_ij, Δ_uv](f)` computed as a commutator of vector fields.
pub fn field_commutator(p: &RepPoint, delta: &PolyVector, (i, j): (usize, usize), cap: &PolyVector, (u, v): (usize, usize), f: &Coord) -> Result<Q> {
    let a = field_on_poly(p, delta, i, j, &field_on_coord_poly(p, cap, u, v, f)?)?;
    let b = field_on_poly(p, cap, u, v, &field_on_coord_poly(p, delta, i, j, f)?)?;
    Ok(a - b)
}

/// `({{δ, Δ}}'_{uj} {{δ, Δ}}''_{iv})(f)` from the double Schouten bracket.
pub fn schouten_entry(p: &RepPoint, delta: &PolyVector, (i, j): (usize, usize), cap: &PolyVector, (u, v): (usize, usize), f: &Coord) -> Result<Q> {
    let t = schouten(p.quiver()).bracket(delta, cap);
    let mut out = Q::zero();
    for (ws, c) in t.terms() {
        let (w1, w2) = (Elem::word(ws[0].clone()), Elem::word(ws[1].clone()));
        let val = if ws[0].count_kind(Kind::Derivation) == 1 {
            vector_field_matrix(p, &w1, f)?.get(u, j) * p.eval(&w2)?.get(i, v)
        } else {
            p.eval(&w1)?.get(u, j) * vector_field_matrix(p, &w2, f)?.get(i, v)
        };
        out += c * val;
    }
    Ok(out)
}

/// `{tr δ, tr x}` and `tr {δ, x}` for grade-1 `δ` and degree 0 `x`.
pub fn trace_schouten_function(p: &RepPoint, delta: &PolyVector, x: &Elem) -> Result<(Q, Q)> {
    let n = p.n();
    let mut lhs = Q::zero();
    for u in 0..n {
        lhs += vector_field_matrix(p, delta, &Coord::new(x.clone(), u, u))?.trace();
    }
    let rhs = p.eval(&schouten(p.quiver()).single(delta, x))?.trace();
    Ok((lhs, rhs))
}

/// `[tr δ, tr Δ](f)` and `tr {δ, Δ}(f)` for grade-1 `δ`, `Δ`.
pub fn trace_schouten_fields(p: &RepPoint, delta: &PolyVector, cap: &PolyVector, f: &Coord) -> Result<(Q, Q)> {
    let n = p.n();
    let mut lhs = Q::zero();
    for i in 0..n {
        for u in 0..n {
            lhs += field_commutator(p, delta, (i, i), cap, (u, u), f)?;
        }
    }
    let br = schouten(p.quiver()).single(delta, cap);
    Ok((lhs, polyvector_trace(p, &br, std::slice::from_ref(f))?))
}

/// `[X(a), f_ji]_uv = a_uj δ_iv - δ_uj a_iv`: the infinitesimal gauge action.
pub fn gauge_action_entry(xa: &Mat, i: usize, j: usize, u: usize, v: usize) -> Q {
    let mut x = Q::zero();
    if i == v {
        x += xa.get(u, j);
    }
    if u == j {
        x -= xa.get(i, v);
    }
    x
}
