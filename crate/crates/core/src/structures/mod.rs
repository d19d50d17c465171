//! Named Hamiltonian and quasi-Hamiltonian structures on doubled quivers,
//! the necklace bracket and the (multiplicative) preprojective relations.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra_core::file::QuiverFile;
use crate::algebra_core::{fmt_elem, localize, necklace, parse_elem, rat, Elem, Kind, Quiver, Tensor, Q};
use crate::brackets::{bracket, check_quasi_poisson, Bracket, DoubleBracketTable};
use crate::error::{Error, Result};
use crate::polyvectors::{check_moment, induced_table, quasi_poisson_residual, schouten, MomentKind, PolyVector};
use crate::report::CheckRecord;

/// A bivector `P` with an additive moment map `μ` or a multiplicative one `Φ`.
///
/// For multiplicative structures the arrow ordering that fixed the order of the
/// factors of `Φ` is the ordering carried by `quiver`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianStructure {
    pub quiver: Quiver,
    pub p: PolyVector,
    pub moment: Elem,
    pub kind: MomentKind,
}

impl HamiltonianStructure {
    /// The double bracket `{{-,-}}_P` as a table on arrow pairs.
    pub fn bracket(&self) -> Result<Bracket> {
        Ok(bracket(induced_table(&self.quiver, &self.p)?))
    }

    /// `{P, P} = 0` (additive) or `{P, P} = (1/6) Σ E_i^3` (multiplicative) modulo commutators.
    pub fn check_bivector(&self) -> CheckRecord {
        let q = &self.quiver;
        let (name, r) = match self.kind {
            MomentKind::Additive => ("bivector.poisson", necklace(&schouten(q).single(&self.p, &self.p), q)),
            MomentKind::Multiplicative => ("bivector.quasi-poisson", quasi_poisson_residual(q, &self.p)),
        };
        if r.is_zero() {
            CheckRecord::proved(name).with_residual("0")
        } else {
            CheckRecord::fail(name, fmt_elem(q, &r), "necklace normal form of the defect")
        }
    }

    pub fn check_moment(&self) -> CheckRecord {
        check_moment(&self.quiver, &self.p, &self.moment, self.kind)
    }

    /// The quasi-Jacobi identity of the induced double bracket on generator triples.
    pub fn check_quasi_bracket(&self) -> CheckRecord {
        match self.bracket() {
            Ok(b) => check_quasi_poisson(&b),
            Err(e) => CheckRecord::error("quasi-poisson", e.to_string()),
        }
    }

    /// The moment components per vertex.
    pub fn components(&self) -> Result<Vec<Elem>> {
        crate::polyvectors::vertex_components(&self.quiver, &self.moment)
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            quiver: QuiverFile::from_quiver(&self.quiver),
            kind: self.kind.into(),
            p: fmt_elem(&self.quiver, &self.p),
            moment: fmt_elem(&self.quiver, &self.moment),
        }
    }

    pub fn from_file(f: &StructureFile) -> Result<HamiltonianStructure> {
        let quiver = f.quiver.to_quiver()?;
        let p = parse_elem(&quiver, &f.p)?;
        let moment = parse_elem(&quiver, &f.moment)?;
        if !p.is_zero() && p.grade() != Some(2) {
            return Err(Error::Degree("P must be a grade 2 poly-vector".into()));
        }
        if moment.degree() != Some(0) && !moment.is_zero() {
            return Err(Error::Degree("moment must be an element of the path algebra".into()));
        }
        Ok(HamiltonianStructure { quiver, p, moment, kind: f.kind.into() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindTag {
    Additive,
    Multiplicative,
}

impl From<MomentKind> for KindTag {
    fn from(k: MomentKind) -> KindTag {
        match k {
            MomentKind::Additive => KindTag::Additive,
            MomentKind::Multiplicative => KindTag::Multiplicative,
        }
    }
}

impl From<KindTag> for MomentKind {
    fn from(k: KindTag) -> MomentKind {
        match k {
            KindTag::Additive => MomentKind::Additive,
            KindTag::Multiplicative => MomentKind::Multiplicative,
        }
    }
}

/// `{quiver, kind, p, moment}` with `p` and `moment` as expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub quiver: QuiverFile,
    pub kind: KindTag,
    pub p: String,
    pub moment: String,
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<StructureFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure documents serialize")
    }
}

fn require_doubled(q: &Quiver) -> Result<()> {
    if q.is_doubled() {
        Ok(())
    } else {
        Err(Error::NotDoubled)
    }
}

fn arrow(q: &Quiver, a: usize) -> Elem {
    Elem::letter(q.letter(Kind::Arrow, a))
}

fn der(q: &Quiver, a: usize) -> Elem {
    Elem::letter(q.letter(Kind::Derivation, a))
}

/// `P = Σ_{a∈Q} D(a) D(a*)` and `μ = Σ_{a∈Q} [a, a*]`.
pub fn standard_hamiltonian(q: &Quiver) -> Result<HamiltonianStructure> {
    require_doubled(q)?;
    let mut p = Elem::zero();
    let mut mu = Elem::zero();
    for a in q.base_arrows() {
        let s = q.star(a).expect("doubled");
        p = p + der(q, a).mul(&der(q, s));
        mu = mu + arrow(q, a).mul(&arrow(q, s)) - arrow(q, s).mul(&arrow(q, a));
    }
    Ok(HamiltonianStructure { quiver: q.clone(), p, moment: mu, kind: MomentKind::Additive })
}

/// The double bracket of [`standard_hamiltonian`]: `{{a, a*}} = e_h(a) ⊗ e_t(a)` for `a ∈ Q`.
pub fn standard_table(q: &Quiver) -> Result<DoubleBracketTable> {
    require_doubled(q)?;
    let mut t = DoubleBracketTable::new(q.clone());
    for a in q.base_arrows() {
        let s = q.star(a).expect("doubled");
        t.set(a, s, Tensor::pair(&Elem::idem(q.head(a)), &Elem::idem(q.tail(a))))?;
    }
    Ok(t)
}

/// The doubled quiver `a: 1 -> 2`, `a*: 2 -> 1` with `e_1 + a a*` and `e_2 + a* a` inverted.
pub fn one_pair_quiver() -> Quiver {
    Quiver::new(&["1", "2"], &[("a", "1", "2")])
        .and_then(|q| q.double())
        .and_then(|q| q.with_inverted(&["a"]))
        .expect("fixed quiver")
}

/// `P = D(a) D(a*) + ½(a D(a) D(a*) a* - a* D(a*) D(a) a)`, `Φ = (1 + a a*)(1 + a* a)^-1`.
pub fn one_pair_quasi() -> HamiltonianStructure {
    let q = one_pair_quiver();
    let (a, s) = (0, 1);
    let dd = der(&q, a).mul(&der(&q, s));
    let cross = arrow(&q, a).mul(&dd).mul(&arrow(&q, s)) - arrow(&q, s).mul(&der(&q, s)).mul(&der(&q, a)).mul(&arrow(&q, a));
    let p = dd + cross.scale(&rat(1, 2));
    // (1 + a* a)^-1 is the inverse letter of a*, localized in terms of ι_a
    let phi = Elem::idem(0) + arrow(&q, a).mul(&arrow(&q, s)) + Elem::letter(q.letter(Kind::Inverse, s));
    let phi = localize(&phi, &q);
    HamiltonianStructure { quiver: q, p, moment: phi, kind: MomentKind::Multiplicative }
}

/// `F_a = D(a*) a* - a D(a)`.
pub fn f_term(q: &Quiver, a: usize) -> PolyVector {
    let s = q.star(a).expect("doubled");
    der(q, s).mul(&arrow(q, s)) - arrow(q, a).mul(&der(q, a))
}

/// `(e + a a*)^{ε(a)}`: the factor contributed by arrow `a` to `Φ_t(a)`.
pub fn phi_factor(q: &Quiver, a: usize) -> Elem {
    let s = q.star(a).expect("doubled");
    if q.epsilon(a) > 0 {
        Elem::idem(q.tail(a)) + arrow(q, a).mul(&arrow(q, s))
    } else {
        localize(&Elem::letter(q.letter(Kind::Inverse, a)), q)
    }
}

/// The structure on the doubled quiver with every `e + a a*` inverted, using
/// the arrow ordering carried by `q`:
/// `P = ½(Σ_a ε(a)(e + a* a) D(a) D(a*) - Σ_{a<b} F_a F_b)` and
/// `Φ_i = Π_{t(a)=i} (e_i + a a*)^{ε(a)}` in that order.
pub fn general_quasi(q: &Quiver) -> Result<HamiltonianStructure> {
    require_doubled(q)?;
    let q = q.with_all_inverted()?;
    let mut p = Elem::zero();
    for a in 0..q.n_arrows() {
        let s = q.star(a).expect("doubled");
        let unit = Elem::idem(q.head(a)) + arrow(&q, s).mul(&arrow(&q, a));
        let term = unit.mul(&der(&q, a)).mul(&der(&q, s));
        p = p + if q.epsilon(a) > 0 { term } else { -term };
    }
    let order = q.order().to_vec();
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            p = p - f_term(&q, a).mul(&f_term(&q, b));
        }
    }
    let p = p.scale(&rat(1, 2));
    let mut phi = Elem::zero();
    for v in 0..q.n_vertices() {
        let mut prod = Elem::idem(v);
        for &a in order.iter().filter(|&&a| q.tail(a) == v) {
            prod = localize(&prod.mul(&phi_factor(&q, a)), &q);
        }
        phi = phi + prod;
    }
    Ok(HamiltonianStructure { quiver: q, p, moment: phi, kind: MomentKind::Multiplicative })
}

/// `{x, y}` in the necklace Lie algebra of a doubled quiver: the associated
/// bracket of [`standard_table`] on the closed part of `x`, modulo commutators.
pub fn necklace_bracket(q: &Quiver, x: &Elem, y: &Elem) -> Result<Elem> {
    let b = bracket(standard_table(q)?);
    let xc = x.filter(|w| w.is_closed());
    Ok(necklace(&b.single(&xc, y), q))
}

/// `μ - Σ λ_i e_i`.
pub fn preprojective_relation(q: &Quiver, lambda: &[Q]) -> Result<Elem> {
    if lambda.len() != q.n_vertices() {
        return Err(Error::Arity { expected: q.n_vertices(), found: lambda.len() });
    }
    let s = standard_hamiltonian(q)?;
    Ok(lambda.iter().enumerate().fold(s.moment, |m, (i, l)| m - Elem::idem(i).scale(l)))
}

/// `Φ - Σ q_i e_i` over `q` with every `e + a a*` inverted; every `q_i` must be nonzero.
pub fn multiplicative_relation(q: &Quiver, qs: &[Q]) -> Result<Elem> {
    if qs.len() != q.n_vertices() {
        return Err(Error::Arity { expected: q.n_vertices(), found: qs.len() });
    }
    if qs.iter().any(|c| c.is_zero()) {
        return Err(Error::Invalid("multiplicative parameters must be nonzero".into()));
    }
    let s = general_quasi(q)?;
    Ok(qs.iter().enumerate().fold(s.moment, |m, (i, c)| m - Elem::idem(i).scale(c)))
}

/// All vertex parameters equal to one.
pub fn unit_parameters(q: &Quiver) -> Vec<Q> {
    vec![Q::one(); q.n_vertices()]
}

#[cfg(test)]
mod tests;
