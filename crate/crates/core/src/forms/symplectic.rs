//! Bi-symplectic forms on doubled quivers, the bivector they determine and the
//! equivalence of `dω = 0` with `{P, P} = 0`.

use num_traits::{One, Zero};

use crate::algebra_core::{fmt_elem, fmt_q, localize, necklace, Elem, Kind, Quiver, Word, Q};
use crate::brackets::{bracket, Bracket};
use crate::error::{Error, Result};
use crate::polyvectors::{check_moment, gauge_element, induced_table, schouten, MomentKind, PolyVector};
use crate::report::CheckRecord;
use crate::structures::standard_hamiltonian;

use super::calculus::{contraction, differential, form_contraction};
use super::koszul::sigma_map;

/// `ω = Σ_{a∈Q} da da*` on a doubled quiver.
pub fn standard_bisymplectic(q: &Quiver) -> Result<Elem> {
    if !q.is_doubled() {
        return Err(Error::NotDoubled);
    }
    let mut w = Elem::zero();
    for a in q.base_arrows() {
        let s = q.star(a).expect("doubled");
        w = w + Elem::letter(q.letter(Kind::Differential, a)).mul(&Elem::letter(q.letter(Kind::Differential, s)));
    }
    Ok(w)
}

/// `ı(ω)` on the generators: `ı_{D(b)} ω = c_b d(π(b))` with `π` a bijection of the arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorPairing {
    /// `images[b] = (π(b), c_b)`.
    pub images: Vec<(usize, Q)>,
}

impl GeneratorPairing {
    /// Reads off `ı_{D(b)} ω` for every arrow; anything other than a nonzero
    /// multiple of one differential letter is unsupported.
    pub fn of(q: &Quiver, omega: &Elem) -> Result<GeneratorPairing> {
        if omega.form_degree() != Some(2) || omega.has_kind(Kind::Derivation) {
            return Err(Error::Degree("expected a 2-form".into()));
        }
        let mut images = Vec::with_capacity(q.n_arrows());
        let mut hit = vec![false; q.n_arrows()];
        for b in 0..q.n_arrows() {
            let img = contraction(q, &Elem::letter(q.letter(Kind::Derivation, b)), omega)?;
            let mut terms = img.terms();
            let single = match (terms.next(), terms.next()) {
                (Some((w, c)), None) if w.len() == 1 && w.letters()[0].kind == Kind::Differential => {
                    Some((w.letters()[0].arrow as usize, c.clone()))
                }
                _ => None,
            };
            let (target, c) = single.ok_or_else(|| {
                Error::Unsupported(format!(
                    "contraction with D({}) is `{}`, not a multiple of one differential",
                    q.arrow(b).id,
                    fmt_elem(q, &img)
                ))
            })?;
            if hit[target] {
                return Err(Error::Unsupported("contraction map is not injective on generators".into()));
            }
            hit[target] = true;
            images.push((target, c));
        }
        Ok(GeneratorPairing { images })
    }

    /// `ψ = ı(ω)^{-1}` on the letter `d(a)`.
    pub fn inverse_letter(&self, q: &Quiver, a: usize) -> PolyVector {
        let (b, (_, c)) = self.images.iter().enumerate().find(|(_, (t, _))| *t == a).expect("bijective pairing");
        Elem::letter(q.letter(Kind::Derivation, b)).scale(&(Q::one() / c))
    }

    /// `ψ` applied letterwise to a form, arrows and inverse letters kept.
    pub fn invert(&self, q: &Quiver, x: &Elem) -> PolyVector {
        let psi: Vec<PolyVector> = (0..q.n_arrows()).map(|a| self.inverse_letter(q, a)).collect();
        x.map_words(|w| {
            let mut acc = Elem::idem(w.src());
            for l in w.letters() {
                let f = if l.kind == Kind::Differential { psi[l.arrow as usize].clone() } else { Elem::letter(*l) };
                acc = acc.mul(&f);
            }
            acc
        })
    }
}

/// `P = -(ψ ⊗ ψ)(ω)`.
pub fn poisson_from_symplectic(q: &Quiver, omega: &Elem) -> Result<PolyVector> {
    let pairing = GeneratorPairing::of(q, omega)?;
    Ok(localize(&pairing.invert(q, omega).scale(&-Q::one()), q))
}

/// Solves `Σ_k x_k cols[k] = target` exactly; `None` when inconsistent.
fn solve(cols: &[Elem], target: &Elem) -> Option<Vec<Q>> {
    let mut rows: Vec<Word> = cols.iter().flat_map(|c| c.terms().map(|(w, _)| w.clone())).collect();
    rows.extend(target.terms().map(|(w, _)| w.clone()));
    rows.sort();
    rows.dedup();
    let n = cols.len();
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|w| cols.iter().map(|c| c.coeff(w)).chain(std::iter::once(target.coeff(w))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][col];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][n].clone();
    }
    Some(x)
}

/// Closed arrow paths at `v` of length `1..=max_len`.
fn closed_paths(q: &Quiver, v: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::idem(v)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..q.n_arrows() {
                if q.tail(a) == w.tgt() {
                    next.push(w.concat(&Word::letter(q.letter(Kind::Arrow, a))).expect("composable"));
                }
            }
        }
        out.extend(next.iter().filter(|w| w.tgt() == v).cloned());
        layer = next;
    }
    out
}

/// Integrates `dμ_i = ı_{E_i} ω` over closed paths of length at most
/// `max_len` at each vertex, with the constant term chosen 0.
pub fn recover_moment(q: &Quiver, omega: &Elem, max_len: usize) -> Result<Vec<Elem>> {
    let mut out = Vec::new();
    for i in 0..q.n_vertices() {
        let target = contraction(q, &gauge_element(q, i)?, omega)?;
        let basis = closed_paths(q, i, max_len);
        let cols: Vec<Elem> = basis.iter().map(|w| differential(q, &Elem::word(w.clone()))).collect::<Result<_>>()?;
        let x = solve(&cols, &target).ok_or_else(|| {
            Error::Unsupported(format!(
                "no moment component at vertex {} among closed paths of length <= {}",
                q.vertices()[i],
                max_len
            ))
        })?;
        let mut mu = Elem::zero();
        for (w, c) in basis.into_iter().zip(x) {
            mu.add_term(w, c);
        }
        out.push(mu);
    }
    Ok(out)
}

/// The rational `κ` with `x = κ y` up to terms in `B`, if one exists.
fn proportional_mod_b(x: &Elem, y: &Elem) -> Option<Option<Q>> {
    let x = x.filter(|w| !w.is_idem());
    let y = y.filter(|w| !w.is_idem());
    if y.is_zero() {
        return if x.is_zero() { Some(None) } else { None };
    }
    let (w, c) = y.terms().next().expect("nonzero");
    let k = x.coeff(w) / c;
    (x == y.scale(&k)).then_some(Some(k))
}

/// Configuration of [`check_bisymplectic_equivalence`].
#[derive(Clone, Copy, Debug)]
pub struct BisymplecticConfig {
    /// Length bound for the closed paths used to integrate the moment map.
    pub moment_max_len: usize,
}

impl Default for BisymplecticConfig {
    fn default() -> Self {
        BisymplecticConfig { moment_max_len: 2 }
    }
}

fn exact(name: &str, ok: bool, residual: impl FnOnce() -> String, witness: &str) -> CheckRecord {
    if ok {
        CheckRecord::proved(name).with_residual("0")
    } else {
        CheckRecord::fail(name, residual(), witness)
    }
}

/// The closedness / Poisson equivalence for `ω` together with the
/// consistency checks around it:
///
/// * `bisymplectic.closed`: `dω = 0` in `DR`;
/// * `bisymplectic.poisson`: `{P, P} = 0` modulo commutators;
/// * `bisymplectic.equivalence`: the two agree;
/// * `bisymplectic.inverse`: `ı_{da} P = ψ(da)`, and this is `H_a` for `{{-,-}}_P`;
/// * `bisymplectic.sigma`: `Σ(ω) = -P`;
/// * `bisymplectic.square`: `Σ(da) = -{P, a}` and `{P, Σ(da)} = 0` on arrows;
/// * `bisymplectic.moment`: the integrated `μ` is a moment map for `P`, proportional
///   to `Σ [a, a*]` up to `B`, with the factor reported as `kappa`.
///
/// A precondition failure yields one ERROR record named `bisymplectic`.
pub fn check_bisymplectic_equivalence(q: &Quiver, omega: &Elem, cfg: BisymplecticConfig) -> Vec<CheckRecord> {
    match run_checks(q, omega, cfg) {
        Ok(rs) => rs,
        Err(e) => vec![CheckRecord::error("bisymplectic", e.to_string())],
    }
}

fn run_checks(q: &Quiver, omega: &Elem, cfg: BisymplecticConfig) -> Result<Vec<CheckRecord>> {
    let pairing = GeneratorPairing::of(q, omega)?;
    let p = localize(&pairing.invert(q, omega).scale(&-Q::one()), q);
    let s = schouten(q);
    let mut out = Vec::new();

    let dw = necklace(&differential(q, omega)?, q);
    let pp = necklace(&s.single(&p, &p), q);
    out.push(exact("bisymplectic.closed", dw.is_zero(), || fmt_elem(q, &dw), "necklace normal form of dω"));
    out.push(exact("bisymplectic.poisson", pp.is_zero(), || fmt_elem(q, &pp), "necklace normal form of {P,P}"));
    out.push(exact(
        "bisymplectic.equivalence",
        dw.is_zero() == pp.is_zero(),
        || format!("dω {} but {{P,P}} {}", vanish(&dw), vanish(&pp)),
        "closedness and Poisson property disagree",
    ));

    let b: Bracket = bracket(induced_table(q, &p)?);
    let mut bad = Vec::new();
    let mut fields = Vec::new();
    for a in 0..q.n_arrows() {
        let x = Elem::letter(q.letter(Kind::Arrow, a));
        let h = crate::polyvectors::hamiltonian_field(&b, &x)?;
        let ip = form_contraction(q, a, &p)?;
        let psi = pairing.inverse_letter(q, a);
        if ip != localize(&psi, q) || ip != localize(&h, q) {
            bad.push(q.arrow(a).id.clone());
        }
        fields.push(h);
    }
    out.push(exact("bisymplectic.inverse", bad.is_empty(), || format!("mismatch on d({})", bad.join(", d(")), "generators"));

    let sig = sigma_map(&b, omega)?;
    let r = localize(&(sig + p.clone()), q);
    out.push(exact("bisymplectic.sigma", r.is_zero(), || fmt_elem(q, &r), "Σ(ω) + P"));

    let mut bad = Vec::new();
    for (a, h) in fields.iter().enumerate() {
        let x = Elem::letter(q.letter(Kind::Arrow, a));
        let first = localize(&(h.clone() + s.single(&p, &x)), q);
        let second = s.single(&p, h);
        if !first.is_zero() {
            bad.push(format!("{}: {}", q.arrow(a).id, fmt_elem(q, &first)));
        }
        if !second.is_zero() {
            bad.push(format!("d({}): {}", q.arrow(a).id, fmt_elem(q, &second)));
        }
    }
    out.push(exact("bisymplectic.square", bad.is_empty(), || bad.join("; "), "Σ∘d + {P,-}∘Σ on generators"));

    out.push(moment_record(q, omega, &p, cfg));
    Ok(out)
}

fn vanish(x: &Elem) -> &'static str {
    if x.is_zero() {
        "vanishes"
    } else {
        "does not vanish"
    }
}

fn moment_record(q: &Quiver, omega: &Elem, p: &PolyVector, cfg: BisymplecticConfig) -> CheckRecord {
    let name = "bisymplectic.moment";
    let mu = match recover_moment(q, omega, cfg.moment_max_len) {
        Ok(mu) => mu,
        Err(e) => return CheckRecord::fail(name, e.to_string(), "integration of ı_E ω"),
    };
    let total = mu.iter().fold(Elem::zero(), |a, b| a + b.clone());
    let shown = fmt_elem(q, &total);
    let cfg_len = cfg.moment_max_len.to_string();
    let identity = check_moment(q, p, &total, MomentKind::Additive);
    if !identity.is_ok() {
        return CheckRecord::fail(name, identity.residual.unwrap_or_default(), format!("recovered μ = {}", shown))
            .param("max_len", cfg_len);
    }
    let standard = match standard_hamiltonian(q).and_then(|h| h.components()) {
        Ok(c) => c,
        Err(e) => return CheckRecord::error(name, e.to_string()),
    };
    let mut kappa: Option<Q> = None;
    for (m, st) in mu.iter().zip(&standard) {
        match proportional_mod_b(m, st) {
            None => return CheckRecord::fail(name, shown, "recovered μ is not a multiple of Σ [a, a*] up to B"),
            Some(None) => {}
            Some(Some(k)) => match &kappa {
                Some(k0) if *k0 != k => {
                    return CheckRecord::fail(name, shown, "vertices disagree on the factor relative to Σ [a, a*]")
                }
                _ => kappa = Some(k),
            },
        }
    }
    CheckRecord::proved(name)
        .with_residual("0")
        .param("mu", shown)
        .param("kappa", kappa.map_or_else(|| "none".to_string(), |k| fmt_q(&k)))
        .param("max_len", cfg_len)
}
