//! Fusion of two vertices: the fused quiver, transport of elements and
//! poly-vectors, fused quasi-Poisson bivectors and fused moment maps.
//!
//! Merging `w` into `v`, a path of the source quiver corresponds to the path
//! with the same arrows in the fused quiver (decorated by `e_12`, `e_21` on the
//! side where it meets `w`). The trace additionally kills paths with exactly
//! one endpoint at `w`.

use num_traits::One;

use crate::algebra_core::{fmt_elem, localize, necklace, rat, Elem, Quiver, Word};
use crate::error::{Error, Result};
use crate::polyvectors::{gauge_element, MomentKind, PolyVector};
use crate::report::CheckRecord;
use crate::structures::{general_quasi, one_pair_quasi, HamiltonianStructure};

/// The fusion of vertex `merged` into vertex `keep`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMap {
    source: Quiver,
    target: Quiver,
    keep: usize,
    merged: usize,
    /// Source vertex index to target vertex index.
    vertex_map: Vec<usize>,
}

/// Fuses `w` into `v` (vertex indices). Arrows keep their indices.
pub fn fuse_quiver(q: &Quiver, v: usize, w: usize) -> Result<FusionMap> {
    let n = q.n_vertices();
    if v >= n || w >= n {
        return Err(Error::UnknownVertex(format!("index {}", v.max(w))));
    }
    if v == w {
        return Err(Error::Invalid("cannot fuse a vertex with itself".into()));
    }
    let vertex_map: Vec<usize> = (0..n).map(|u| if u == w { v } else { u }).map(|u| if u > w { u - 1 } else { u }).collect();
    let names: Vec<String> = (0..n).filter(|&u| u != w).map(|u| q.vertices()[u].clone()).collect();
    let arrows = q
        .arrows()
        .iter()
        .map(|a| crate::algebra_core::Arrow { id: a.id.clone(), tail: vertex_map[a.tail], head: vertex_map[a.head] })
        .collect();
    let target = Quiver::from_parts(
        names,
        arrows,
        q.is_doubled(),
        (0..q.n_arrows()).map(|a| q.epsilon(a)).collect(),
        (0..q.n_arrows()).map(|a| q.star(a)).collect(),
        q.order().to_vec(),
        q.inverted_flags().to_vec(),
    );
    Ok(FusionMap { source: q.clone(), target, keep: v, merged: w, vertex_map })
}

/// Like [`fuse_quiver`] with vertex ids.
pub fn fuse_quiver_ids(q: &Quiver, v: &str, w: &str) -> Result<FusionMap> {
    fuse_quiver(q, q.vertex_index(v)?, q.vertex_index(w)?)
}

impl FusionMap {
    pub fn source(&self) -> &Quiver {
        &self.source
    }

    pub fn target(&self) -> &Quiver {
        &self.target
    }

    /// The kept vertex, as a target index.
    pub fn fused_vertex(&self) -> usize {
        self.vertex_map[self.keep]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    fn move_word(&self, w: &Word) -> Word {
        let t = &self.target;
        w.map_letters(|l| t.letter(l.kind, l.arrow as usize), |u| self.vertex_map[u as usize] as u32)
    }

    /// The dictionary `a -> a`, `a e_21 -> a`, `e_12 a -> a`, `e_12 a e_21 -> a`, applied wordwise.
    pub fn transport(&self, x: &Elem) -> Elem {
        x.map_words(|w| Elem::word(self.move_word(w)))
    }

    /// `Tr(x) = ε x ε + e_12 x e_21` for `1 = ε + e_21 ε e_12`.
    pub fn trace(&self, x: &Elem) -> Elem {
        let w = self.merged;
        x.map_words(|u| {
            if (u.src() == w) != (u.tgt() == w) {
                Elem::zero()
            } else {
                Elem::word(self.move_word(u))
            }
        })
    }

    /// `E_v^f` and `E_w^f`: the source gauge elements of the two fused vertices, transported.
    pub fn fused_gauges(&self) -> (PolyVector, PolyVector) {
        let ev = gauge_element(&self.source, self.keep).expect("vertex in range");
        let ew = gauge_element(&self.source, self.merged).expect("vertex in range");
        (self.transport(&ev), self.transport(&ew))
    }
}

/// `P^f = Tr(P)`, minus `½ E_v^f E_w^f` when `quasi` is set.
pub fn fuse_polyvector(p: &PolyVector, f: &FusionMap, quasi: bool) -> Result<PolyVector> {
    if !p.is_zero() && p.grade().is_none() {
        return Err(Error::Degree("poly-vector is not homogeneous".into()));
    }
    let pf = f.trace(p);
    if !quasi {
        return Ok(pf);
    }
    if !p.is_zero() && p.grade() != Some(2) {
        return Err(Error::Degree("the quasi-Poisson correction applies to bivectors".into()));
    }
    let (ev, ew) = f.fused_gauges();
    Ok(pf - ev.mul(&ew).scale(&rat(1, 2)))
}

/// Fused moment: `μ_v + μ_w` (additive) or `Φ_v Φ_w` (multiplicative) at the
/// fused vertex, the other components transported.
pub fn fuse_moment(m: &Elem, f: &FusionMap, kind: MomentKind) -> Result<Elem> {
    let comps = crate::polyvectors::vertex_components(f.source(), m)?;
    let mut out = Elem::zero();
    for (u, c) in comps.iter().enumerate() {
        if u != f.keep && u != f.merged {
            out = out + f.transport(c);
        }
    }
    let (cv, cw) = (f.transport(&comps[f.keep]), f.transport(&comps[f.merged]));
    let fused = match kind {
        MomentKind::Additive => cv + cw,
        MomentKind::Multiplicative => cv.mul(&cw),
    };
    Ok(localize(&(out + fused), f.target()))
}

/// Fuses a whole structure; multiplicative structures get the quasi-Poisson correction.
pub fn fuse_structure(s: &HamiltonianStructure, f: &FusionMap) -> Result<HamiltonianStructure> {
    if f.source() != &s.quiver {
        return Err(Error::MixedQuiver("fusion map built for another quiver".into()));
    }
    let quasi = s.kind == MomentKind::Multiplicative;
    Ok(HamiltonianStructure {
        quiver: f.target().clone(),
        p: fuse_polyvector(&s.p, f, quasi)?,
        moment: fuse_moment(&s.moment, f, s.kind)?,
        kind: s.kind,
    })
}

/// `Tr(x) = Σ e q_i x p_i e` for an idempotent `e` (sum of the listed vertices)
/// and a decomposition `1 = Σ p_i e q_i`, which is validated first.
pub fn trace_map(q: &Quiver, x: &Elem, e_vertices: &[usize], decomposition: &[(Elem, Elem)]) -> Result<Elem> {
    let mut e = Elem::zero();
    for &v in e_vertices {
        if v >= q.n_vertices() {
            return Err(Error::UnknownVertex(format!("index {}", v)));
        }
        e.add_term(Word::idem(v), One::one());
    }
    let one = decomposition.iter().fold(Elem::zero(), |acc, (p, qq)| acc + p.mul(&e).mul(qq));
    if localize(&one, q) != Elem::one(q.n_vertices()) {
        return Err(Error::Invalid("decomposition does not multiply out to 1".into()));
    }
    let tr = decomposition.iter().fold(Elem::zero(), |acc, (p, qq)| acc + e.mul(qq).mul(x).mul(p).mul(&e));
    Ok(localize(&tr, q))
}

/// The separated quiver of a doubled quiver: one vertex `v_a` per arrow,
/// `t(a) = v_a`, `h(a) = v_{a*}`, every pair inverted. Arrows keep their indices.
pub fn separated_quiver(q: &Quiver) -> Result<Quiver> {
    if !q.is_doubled() {
        return Err(Error::NotDoubled);
    }
    let names: Vec<String> = q.arrows().iter().map(|a| format!("v_{}", a.id)).collect();
    let arrows = (0..q.n_arrows())
        .map(|a| crate::algebra_core::Arrow { id: q.arrow(a).id.clone(), tail: a, head: q.star(a).expect("doubled") })
        .collect();
    Ok(Quiver::from_parts(
        names,
        arrows,
        true,
        (0..q.n_arrows()).map(|a| q.epsilon(a)).collect(),
        (0..q.n_arrows()).map(|a| q.star(a)).collect(),
        q.order().to_vec(),
        vec![true; q.n_arrows()],
    ))
}

/// One copy of the one-pair structure per arrow pair of `q`, on [`separated_quiver`].
pub fn separated_structure(q: &Quiver) -> Result<HamiltonianStructure> {
    let sep = separated_quiver(q)?;
    let one = one_pair_quasi();
    let mut p = Elem::zero();
    let mut phi = Elem::zero();
    for a in q.base_arrows() {
        let s = q.star(a).expect("doubled");
        // one-pair arrows 0 = a, 1 = a*; vertices 0 = v_a, 1 = v_a*
        let arrow_map = [a, s];
        let vertex_map = [a, s];
        let mv = |x: &Elem| {
            x.map_words(|w| {
                Elem::word(w.map_letters(|l| sep.letter(l.kind, arrow_map[l.arrow as usize]), |u| vertex_map[u as usize] as u32))
            })
        };
        p = p + mv(&one.p);
        phi = phi + mv(&one.moment);
    }
    Ok(HamiltonianStructure { quiver: sep, p, moment: phi, kind: MomentKind::Multiplicative })
}

/// Rebuilds the general quasi-Hamiltonian structure of `q` from
/// [`separated_structure`] by fusing, for each vertex `i`, the vertices `v_a`
/// with `t(a) = i` in the arrow order of `q`. The result lives on `q` with
/// every pair inverted.
pub fn fold_separated(q: &Quiver) -> Result<HamiltonianStructure> {
    let mut s = separated_structure(q)?;
    for i in 0..q.n_vertices() {
        let out: Vec<usize> = q.order().iter().copied().filter(|&a| q.tail(a) == i).collect();
        for &b in out.iter().skip(1) {
            let keep = s.quiver.vertex_index(&format!("v_{}", q.arrow(out[0]).id))?;
            let merged = s.quiver.vertex_index(&format!("v_{}", q.arrow(b).id))?;
            let f = fuse_quiver(&s.quiver, keep, merged)?;
            s = fuse_structure(&s, &f)?;
        }
    }
    // vertex `v_a` for the first arrow out of `i` becomes `i`; vertices of `q` without arrows are added
    let target = q.with_all_inverted()?;
    let mut vmap = vec![usize::MAX; s.quiver.n_vertices()];
    for i in 0..q.n_vertices() {
        if let Some(&a) = q.order().iter().find(|&&a| q.tail(a) == i) {
            vmap[s.quiver.vertex_index(&format!("v_{}", q.arrow(a).id))?] = i;
        }
    }
    let mv = |x: &Elem| x.map_words(|w| Elem::word(w.map_letters(|l| target.letter(l.kind, l.arrow as usize), |u| vmap[u as usize] as u32)));
    let mut moment = mv(&s.moment);
    for i in 0..q.n_vertices() {
        if !q.order().iter().any(|&a| q.tail(a) == i) {
            moment = moment + Elem::idem(i);
        }
    }
    Ok(HamiltonianStructure { p: mv(&s.p), moment, quiver: target, kind: MomentKind::Multiplicative })
}

/// The direct general structure of `q` against [`fold_separated`]: `P` modulo
/// commutators, `Φ` element by element. The arrow order is reported.
pub fn check_fusion_coherence(q: &Quiver) -> CheckRecord {
    let name = "fusion.coherence";
    let order: Vec<String> = q.order().iter().map(|&a| q.arrow(a).id.clone()).collect();
    let res = (|| -> Result<CheckRecord> {
        let direct = general_quasi(q)?;
        let folded = fold_separated(q)?;
        let t = &direct.quiver;
        let dp = necklace(&(direct.p.clone() - folded.p.clone()), t);
        let dm = localize(&(direct.moment.clone() - folded.moment.clone()), t);
        Ok(if !dp.is_zero() {
            CheckRecord::fail(name, fmt_elem(t, &dp), "P modulo commutators")
        } else if !dm.is_zero() {
            CheckRecord::fail(name, fmt_elem(t, &dm), "Φ element by element")
        } else {
            CheckRecord::proved(name).with_residual("0")
        })
    })();
    match res {
        Ok(r) => r.param("order", order.join(",")),
        Err(e) => CheckRecord::error(name, e.to_string()),
    }
}
