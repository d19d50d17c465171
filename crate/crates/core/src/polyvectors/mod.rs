//! Poly-vector fields: words with derivation letters `D(a)`, the degree -1
//! double Schouten bracket, gauge elements, Hamiltonian vector fields and the
//! moment-map identities.

mod intrinsic;
mod nbracket;

pub use intrinsic::{intrinsic_left, intrinsic_right, split_left_right};
pub use nbracket::NBracket;

use num_traits::One;

use crate::algebra_core::{fmt_elem, localize, rat, Elem, Kind, Letter, Quiver, Tensor, Word, Q};
use crate::brackets::{normalize_tensor, DoubleBracketTable, Engine, LetterTable};
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Status};

/// Elements of the poly-vector algebra; the grade is the number of `D(a)` letters.
pub type PolyVector = Elem;

/// Generator values of the Schouten bracket:
/// `{{D(a), b}} = δ_ab e_t(a) ⊗ e_h(a)`, arrows and derivations otherwise bracket to 0.
#[derive(Clone, Debug)]
pub struct SchoutenTable {
    quiver: Quiver,
}

impl LetterTable for SchoutenTable {
    fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    fn odd(&self) -> bool {
        true
    }
    fn letters(&self, x: &Letter, y: &Letter) -> Tensor {
        let q = &self.quiver;
        match (x.kind, y.kind) {
            (Kind::Derivation, Kind::Arrow) if x.arrow == y.arrow => {
                let a = x.arrow as usize;
                Tensor::pair(&Elem::idem(q.tail(a)), &Elem::idem(q.head(a)))
            }
            (Kind::Arrow, Kind::Derivation) if x.arrow == y.arrow => {
                let a = x.arrow as usize;
                -Tensor::pair(&Elem::idem(q.head(a)), &Elem::idem(q.tail(a)))
            }
            _ => Tensor::zero(2),
        }
    }
    fn accepts(&self, kind: Kind) -> bool {
        matches!(kind, Kind::Arrow | Kind::Derivation)
    }
}

pub type Schouten = Engine<SchoutenTable>;

/// The Schouten bracket engine on the poly-vectors of `q`.
pub fn schouten(q: &Quiver) -> Schouten {
    Engine::new(SchoutenTable { quiver: q.clone() })
}

/// `E_i = Σ_{h(a)=i} D(a) a - Σ_{t(a)=i} a D(a)` over all arrows.
pub fn gauge_element(q: &Quiver, i: usize) -> Result<PolyVector> {
    if i >= q.n_vertices() {
        return Err(Error::UnknownVertex(format!("index {}", i)));
    }
    let mut e = Elem::zero();
    for a in 0..q.n_arrows() {
        let arrow = Elem::letter(q.letter(Kind::Arrow, a));
        let der = Elem::letter(q.letter(Kind::Derivation, a));
        if q.head(a) == i {
            e = e + der.mul(&arrow);
        }
        if q.tail(a) == i {
            e = e - arrow.mul(&der);
        }
    }
    Ok(e)
}

/// `E = Σ_i E_i`.
pub fn total_gauge(q: &Quiver) -> PolyVector {
    (0..q.n_vertices()).map(|i| gauge_element(q, i).expect("vertex in range")).fold(Elem::zero(), |a, b| a + b)
}

/// A grade-1 word `x D(b) y`, acting on arrows by `c -> [b = c] y ⊗ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleDerivation {
    pub left: Word,
    pub arrow: usize,
    pub right: Word,
}

impl SimpleDerivation {
    /// Splits a word with exactly one derivation letter.
    pub fn from_word(w: &Word) -> Option<SimpleDerivation> {
        let pos: Vec<usize> = (0..w.len()).filter(|&k| w.letters()[k].kind == Kind::Derivation).collect();
        if pos.len() != 1 {
            return None;
        }
        let k = pos[0];
        Some(SimpleDerivation { left: w.slice(0, k), arrow: w.letters()[k].arrow as usize, right: w.slice(k + 1, w.len()) })
    }

    /// Value on a degree 0 word, extended by the Leibniz rule; unnormalized.
    pub fn apply_word(&self, q: &Quiver, w: &Word) -> Tensor {
        let mut out = Tensor::zero(2);
        for j in 0..w.len() {
            let l = w.letters()[j];
            let inner = match l.kind {
                Kind::Arrow if l.arrow as usize == self.arrow => {
                    Tensor::pair(&Elem::word(self.right.clone()), &Elem::word(self.left.clone()))
                }
                Kind::Inverse => {
                    let c = l.arrow as usize;
                    let cc = Word::from_letters(vec![q.letter(Kind::Arrow, c), q.letter(Kind::Arrow, q.star(c).expect("paired"))])
                        .expect("c c* composes");
                    let iota = Elem::letter(l);
                    -self.apply_word(q, &cc).outer(&iota, &iota)
                }
                _ => continue,
            };
            out.add_scaled(&inner.outer(&Elem::word(w.slice(0, j)), &Elem::word(w.slice(j + 1, w.len()))), &Q::one());
        }
        out
    }

    pub fn apply(&self, q: &Quiver, x: &Elem) -> Tensor {
        let mut out = Tensor::zero(2);
        for (w, c) in x.terms() {
            out.add_scaled(&self.apply_word(q, w), c);
        }
        out
    }
}

/// The double derivation of a grade-1 poly-vector applied to a degree 0 element, normalized.
pub fn apply_derivation(q: &Quiver, d: &PolyVector, x: &Elem) -> Result<Tensor> {
    if x.degree() != Some(0) {
        return Err(Error::Degree("double derivations act on degree 0 elements".into()));
    }
    let mut out = Tensor::zero(2);
    for (w, c) in d.terms() {
        let sd = SimpleDerivation::from_word(w).ok_or_else(|| Error::Degree("expected a grade 1 poly-vector".into()))?;
        out.add_scaled(&sd.apply(q, x), c);
    }
    Ok(normalize_tensor(&out, q))
}

/// `δ = Σ_a δ(a)'' D(a) δ(a)'` from values on the arrows.
pub fn derivation_to_polyvector(q: &Quiver, values: &[(usize, Tensor)]) -> Result<PolyVector> {
    let mut out = Elem::zero();
    for (a, t) in values {
        let a = *a;
        if t.arity() != 2 {
            return Err(Error::Arity { expected: 2, found: t.arity() });
        }
        let der = Word::letter(q.letter(Kind::Derivation, a));
        for (ws, c) in t.terms() {
            let w = ws[1].concat(&der).and_then(|w| w.concat(&ws[0])).ok_or_else(|| {
                Error::Incomposable(format!("value on `{}` does not compose around D({})", q.arrow(a).id, q.arrow(a).id))
            })?;
            out.add_term(w, c.clone());
        }
    }
    Ok(out)
}

/// `H_x`: the grade-1 poly-vector with values `a -> {{x, a}}`.
pub fn hamiltonian_field<T: LetterTable>(engine: &Engine<T>, x: &Elem) -> Result<PolyVector> {
    let q = engine.quiver();
    let values: Vec<(usize, Tensor)> =
        (0..q.n_arrows()).map(|a| (a, engine.bracket(x, &Elem::letter(q.letter(Kind::Arrow, a))))).collect();
    derivation_to_polyvector(q, &values)
}

/// `H` extended to tensors: `H_{x'⊗x''} = H_{x'} ⊗ x'' + x' ⊗ H_{x''}`.
pub fn hamiltonian_on_tensor<T: LetterTable>(engine: &Engine<T>, t: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (ws, c) in t.terms() {
        let h0 = hamiltonian_field(engine, &Elem::word(ws[0].clone()))?;
        let h1 = hamiltonian_field(engine, &Elem::word(ws[1].clone()))?;
        out.add_scaled(&Tensor::pair(&h0, &Elem::word(ws[1].clone())), c);
        out.add_scaled(&Tensor::pair(&Elem::word(ws[0].clone()), &h1), c);
    }
    Ok(out)
}

/// Moment-map flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentKind {
    Additive,
    Multiplicative,
}

/// Splits `m` into its diagonal corners `e_i m e_i`; off-diagonal terms are an error.
pub fn vertex_components(q: &Quiver, m: &Elem) -> Result<Vec<Elem>> {
    let comps: Vec<Elem> = (0..q.n_vertices()).map(|i| m.corner(i, i)).collect();
    let sum = comps.iter().fold(Elem::zero(), |a, b| a + b.clone());
    if sum != *m {
        return Err(Error::Invalid("moment element has terms that are not closed".into()));
    }
    Ok(comps)
}

/// The per-vertex residuals `{P, μ_i} + E_i` or `{P, Φ_i} + ½(E_i Φ_i + Φ_i E_i)`.
pub fn moment_residuals(q: &Quiver, p: &PolyVector, m: &Elem, kind: MomentKind) -> Result<Vec<Elem>> {
    let s = schouten(q);
    let comps = vertex_components(q, m)?;
    let mut out = Vec::new();
    for (i, mi) in comps.iter().enumerate() {
        let e = gauge_element(q, i)?;
        let lhs = s.single(p, mi);
        let target = match kind {
            MomentKind::Additive => e,
            MomentKind::Multiplicative => (e.mul(mi) + mi.mul(&e)).scale(&q_half()),
        };
        out.push(localize(&(lhs + target), q));
    }
    Ok(out)
}

fn q_half() -> Q {
    rat(1, 2)
}

/// Element-level moment identity for every vertex.
pub fn check_moment(q: &Quiver, p: &PolyVector, m: &Elem, kind: MomentKind) -> CheckRecord {
    let name = match kind {
        MomentKind::Additive => "moment.additive",
        MomentKind::Multiplicative => "moment.multiplicative",
    };
    match moment_residuals(q, p, m, kind) {
        Err(e) => CheckRecord::error(name, e.to_string()),
        Ok(res) => {
            let bad: Vec<String> = res
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.is_zero())
                .map(|(i, r)| format!("vertex {}: {}", q.vertices()[i], fmt_elem(q, r)))
                .collect();
            if bad.is_empty() {
                CheckRecord::proved(name).with_residual("0")
            } else {
                CheckRecord::fail(name, bad.join("; "), "element-level identity per vertex")
            }
        }
    }
}

/// `{P, P} - (1/6) Σ E_i^3` reduced modulo graded commutators.
pub fn quasi_poisson_residual(q: &Quiver, p: &PolyVector) -> Elem {
    let s = schouten(q);
    let pp = s.single(p, p);
    let cubes = (0..q.n_vertices())
        .map(|i| gauge_element(q, i).expect("vertex in range").pow(3))
        .fold(Elem::zero(), |a, b| a + b);
    crate::algebra_core::necklace(&(pp - cubes.scale(&rat(1, 6))), q)
}

/// The double bracket on arrows induced by a grade-2 poly-vector, as a table.
pub fn induced_table(q: &Quiver, p: &PolyVector) -> Result<DoubleBracketTable> {
    let nb = NBracket::with_arity(q, p, 2)?;
    let mut t = DoubleBracketTable::new(q.clone());
    for a in 0..q.n_arrows() {
        for b in a..q.n_arrows() {
            let x = Elem::letter(q.letter(Kind::Arrow, a));
            let y = Elem::letter(q.letter(Kind::Arrow, b));
            t.set(a, b, nb.eval(&[x, y])?)?;
        }
    }
    Ok(t)
}

/// Convenience status for comparing two exact results.
pub fn exact_status(ok: bool) -> Status {
    if ok {
        Status::Proved
    } else {
        Status::Fail
    }
}
