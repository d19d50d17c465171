//! Identities on representation spaces checked exactly at points, and the
//! sampling oracle.

use num_traits::Zero;
use rand::Rng;

use super::induced::{
    gauge_action_entry, induced_bracket_tensor, jacobi_residual, lie_poisson_tensor, polyvector_matrix, trace_bracket, Coord,
};
use super::point::{random_point, DimVector, RepPoint};
use crate::algebra_core::{fmt_elem, fmt_q, rat, Elem, Kind, Quiver, Tensor, Q};
use crate::brackets::{bracket, DoubleBracketTable, Engine, LetterTable};
use crate::error::{Error, Result};
use crate::polyvectors::{gauge_element, MomentKind};
use crate::report::CheckRecord;
use crate::sample;
use crate::structures::HamiltonianStructure;

fn at(r: CheckRecord, p: &RepPoint, seed: Option<u64>) -> CheckRecord {
    let r = r.param("dims", p.dims().render());
    match seed {
        Some(s) => r.param("seed", s.to_string()),
        None => r,
    }
}

fn idx(i: &[usize]) -> String {
    format!("[{}]", i.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(","))
}

/// The Jacobi identity for the induced bracket on `a_pq, b_rs, c_uv`:
/// `identity` compares nested evaluation with the triple-bracket side, `jacobi` asks the left side to vanish.
pub fn check_jacobi_rep<T: LetterTable>(engine: &Engine<T>, a: &Elem, b: &Elem, c: &Elem, p: &RepPoint, seed: Option<u64>) -> Vec<CheckRecord> {
    let q = engine.quiver();
    let witness = format!("({}, {}, {})", fmt_elem(q, a), fmt_elem(q, b), fmt_elem(q, c));
    let ev = match jacobi_residual(engine, a, b, c, p) {
        Ok(ev) => ev,
        Err(e) => return vec![CheckRecord::error("rep.jacobi", e.to_string())],
    };
    let mut out = Vec::new();
    let res = ev.residual();
    out.push(at(
        match res.first_nonzero() {
            None => CheckRecord::proved("rep.jacobi-identity").with_residual("0"),
            Some((i, v)) => CheckRecord::fail("rep.jacobi-identity", format!("{} at {}", fmt_q(&v), idx(&i)), witness.clone()),
        },
        p,
        seed,
    ));
    out.push(at(
        match ev.lhs.first_nonzero() {
            None => CheckRecord::proved("rep.jacobi").with_residual("0"),
            Some((i, v)) => CheckRecord::fail("rep.jacobi", format!("{} at {}", fmt_q(&v), idx(&i)), witness),
        },
        p,
        seed,
    ));
    out
}

/// `{tr a, tr b} = tr {a, b}` at `p`.
pub fn check_trace_rep<T: LetterTable>(engine: &Engine<T>, a: &Elem, b: &Elem, p: &RepPoint, seed: Option<u64>) -> CheckRecord {
    let q = engine.quiver();
    let r = match trace_bracket(engine, a, b, p) {
        Ok((l, r)) if l == r => CheckRecord::proved("rep.trace").with_residual("0"),
        Ok((l, r)) => CheckRecord::fail("rep.trace", fmt_q(&(l - r)), format!("({}, {})", fmt_elem(q, a), fmt_elem(q, b))),
        Err(e) => CheckRecord::error("rep.trace", e.to_string()),
    };
    at(r, p, seed)
}

/// `(E_v)_ij` acts on `a_uv` as `[X(a), f_ji]` inside block `v` and as zero outside, for every arrow `a`.
pub fn check_gauge_rep(p: &RepPoint, seed: Option<u64>) -> CheckRecord {
    let res = (|| -> Result<Option<String>> {
        let q = p.quiver();
        let n = p.n();
        for vert in 0..q.n_vertices() {
            let e = gauge_element(q, vert)?;
            for a in 0..q.n_arrows() {
                let ae = Elem::letter(q.letter(Kind::Arrow, a));
                let xa = p.eval(&ae)?;
                for u in 0..n {
                    for v in 0..n {
                        let m = polyvector_matrix(p, &e, &[Coord::new(ae.clone(), u, v)])?;
                        for i in 0..n {
                            for j in 0..n {
                                let inside = p.dims().phi(i) == vert && p.dims().phi(j) == vert;
                                let want = if inside { gauge_action_entry(&xa, i, j, u, v) } else { Q::zero() };
                                if m.get(i, j) != &want {
                                    return Ok(Some(format!("E({}) entry {} on {}{}", q.vertices()[vert], idx(&[i, j]), q.arrow(a).id, idx(&[u, v]))));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    })();
    let r = match res {
        Ok(None) => CheckRecord::proved("rep.gauge-action").with_residual("0"),
        Ok(Some(w)) => CheckRecord::fail("rep.gauge-action", "entry differs from [X(a), f_ji]", w),
        Err(e) => CheckRecord::error("rep.gauge-action", e.to_string()),
    };
    at(r, p, seed)
}

/// The induced bracket of `{{t, t}} = t ⊗ 1 - 1 ⊗ t` on the one-loop quiver
/// against the Lie-Poisson bracket of `gl_n` at a random point.
pub fn check_lie_poisson(n: usize, seed: u64) -> CheckRecord {
    let res = (|| -> Result<CheckRecord> {
        let q = sample::loop_quiver();
        let table = DoubleBracketTable::new(q.clone()).with("t", "t", "t ⊗ e(1) - e(1) ⊗ t")?;
        let br = bracket(table);
        let p = random_point(&q, &DimVector::new(&[n])?, seed)?;
        let t = Elem::letter(q.letter(Kind::Arrow, 0));
        let got = induced_bracket_tensor(&br, &t, &t, &p)?;
        let want = lie_poisson_tensor(p.arrow_matrix(0));
        Ok(match got.sub(&want).first_nonzero() {
            None => CheckRecord::proved("rep.lie-poisson").with_residual("0"),
            Some((i, v)) => CheckRecord::fail("rep.lie-poisson", format!("{} at {}", fmt_q(&v), idx(&i)), p.render()),
        })
    })();
    match res {
        Ok(r) => r.param("dims", n.to_string()).param("seed", seed.to_string()),
        Err(e) => CheckRecord::error("rep.lie-poisson", e.to_string()),
    }
}

/// The moment identity of a structure at `p`: additive
/// `{μ_p,ij, a_uv} = [X(a), f_ji]_uv`, multiplicative
/// `{Φ_q,uv, a_rs} = ½ Σ_i [X(a), f_vi]_rs Φ_ui + ½ Σ_j [X(a), f_ju]_rs Φ_jv`
/// together with invertibility of `X(Φ)`.
pub fn check_moment_rep(s: &HamiltonianStructure, p: &RepPoint, seed: Option<u64>) -> Vec<CheckRecord> {
    let name = match s.kind {
        MomentKind::Additive => "rep.moment",
        MomentKind::Multiplicative => "rep.moment-multiplicative",
    };
    let res = (|| -> Result<Vec<CheckRecord>> {
        if p.quiver() != &s.quiver {
            return Err(Error::MixedQuiver("point built for another quiver".into()));
        }
        let q = &s.quiver;
        let br = s.bracket()?;
        let comps = s.components()?;
        let n = p.n();
        let half = rat(1, 2);
        let mut out = Vec::new();
        if s.kind == MomentKind::Multiplicative {
            let phi = p.eval(&s.moment)?;
            out.push(match phi.inverse() {
                Some(_) => CheckRecord::proved("rep.moment-invertible"),
                None => CheckRecord::fail("rep.moment-invertible", "X(Φ) is singular", p.render()),
            });
        }
        for (vert, comp) in comps.iter().enumerate() {
            let xm = p.eval(comp)?;
            for a in 0..q.n_arrows() {
                let ae = Elem::letter(q.letter(Kind::Arrow, a));
                let xa = p.eval(&ae)?;
                let bt = induced_bracket_tensor(&br, comp, &ae, p)?;
                for u in 0..n {
                    for v in 0..n {
                        for r in 0..n {
                            for t in 0..n {
                                let inside = p.dims().phi(u) == vert && p.dims().phi(v) == vert;
                                let want = if !inside {
                                    Q::zero()
                                } else {
                                    match s.kind {
                                        MomentKind::Additive => gauge_action_entry(&xa, u, v, r, t),
                                        MomentKind::Multiplicative => {
                                            let mut w = Q::zero();
                                            for i in p.dims().block(vert) {
                                                w += gauge_action_entry(&xa, i, v, r, t) * xm.get(u, i);
                                                w += gauge_action_entry(&xa, u, i, r, t) * xm.get(i, v);
                                            }
                                            w * &half
                                        }
                                    }
                                };
                                let got = bt.get(&[u, v, r, t]);
                                if got != &want {
                                    out.push(CheckRecord::fail(
                                        name,
                                        fmt_q(&(got - &want)),
                                        format!("vertex {}, {}{} against {}{}", q.vertices()[vert], "moment", idx(&[u, v]), q.arrow(a).id, idx(&[r, t])),
                                    ));
                                    return Ok(out);
                                }
                            }
                        }
                    }
                }
            }
        }
        out.push(CheckRecord::proved(name).with_residual("0"));
        Ok(out)
    })();
    match res {
        Ok(rs) => rs.into_iter().map(|r| at(r, p, seed)).collect(),
        Err(e) => vec![CheckRecord::error(name, e.to_string())],
    }
}

/// Sampling parameters for the evaluation oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub points: usize,
    pub max_dim: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { points: 8, max_dim: 3, seed: 0 }
    }
}

/// What the oracle evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    /// `X(x)`, or `X(P)` on random arrow coordinates.
    Matrix,
    /// `tr X(x)`, or `tr(P)` on random arrow coordinates; blind to commutators.
    Trace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub points: usize,
    /// The first point where the probe was nonzero.
    pub witness: Option<String>,
}

impl OracleOutcome {
    pub fn vanished(&self) -> bool {
        self.witness.is_none()
    }

    /// A one-line summary for report parameters.
    pub fn summary(&self) -> String {
        match &self.witness {
            None => format!("vanished at {} points", self.points),
            Some(w) => format!("nonzero at {}", w),
        }
    }
}

/// Evaluates `x` (an element or homogeneous poly-vector) at seeded random points.
pub fn oracle_zero(q: &Quiver, x: &Elem, probe: Probe, cfg: OracleConfig) -> Result<OracleOutcome> {
    let grade = if x.is_zero() { 0 } else { x.grade().ok_or_else(|| Error::Degree("oracle needs a homogeneous input".into()))? };
    if x.has_kind(Kind::Differential) {
        return Err(Error::Unsupported("the oracle does not evaluate forms".into()));
    }
    let mut r = sample::rng(cfg.seed);
    for k in 0..cfg.points {
        let alpha: Vec<usize> = (0..q.n_vertices()).map(|_| r.gen_range(1..=cfg.max_dim.max(1))).collect();
        let dims = DimVector::new(&alpha)?;
        let pseed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(k as u64);
        let p = random_point(q, &dims, pseed)?;
        let coords: Vec<Coord> = (0..grade)
            .map(|_| {
                let a = r.gen_range(0..q.n_arrows().max(1));
                if q.n_arrows() == 0 {
                    return Coord::new(Elem::one(q.n_vertices()), 0, 0);
                }
                let (rows, cols) = (dims.block(q.tail(a)), dims.block(q.head(a)));
                Coord::new(Elem::letter(q.letter(Kind::Arrow, a)), r.gen_range(rows), r.gen_range(cols))
            })
            .collect();
        let m = polyvector_matrix(&p, x, &coords)?;
        let nonzero = match probe {
            Probe::Matrix => !m.is_zero(),
            Probe::Trace => !m.trace().is_zero(),
        };
        if nonzero {
            return Ok(OracleOutcome { points: k + 1, witness: Some(format!("dims={} seed={}", dims.render(), pseed)) });
        }
    }
    Ok(OracleOutcome { points: cfg.points, witness: None })
}

/// Evaluates a tensor at seeded random points: `Σ c X(x₁) ⊗ … ⊗ X(x_k)` entrywise.
pub fn oracle_zero_tensor(q: &Quiver, t: &Tensor, cfg: OracleConfig) -> Result<OracleOutcome> {
    let mut r = sample::rng(cfg.seed);
    for k in 0..cfg.points {
        let alpha: Vec<usize> = (0..q.n_vertices()).map(|_| r.gen_range(1..=cfg.max_dim.max(1))).collect();
        let dims = DimVector::new(&alpha)?;
        let pseed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(k as u64);
        let p = random_point(q, &dims, pseed)?;
        let mut acc: std::collections::BTreeMap<Vec<usize>, Q> = std::collections::BTreeMap::new();
        for (c, ms) in p.eval_tensor(t)? {
            let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), c)];
            for m in &ms {
                let nz: Vec<(usize, usize)> = (0..m.dim()).flat_map(|i| (0..m.dim()).map(move |j| (i, j))).filter(|&(i, j)| !m.get(i, j).is_zero()).collect();
                partial = partial
                    .iter()
                    .flat_map(|(idx, v)| nz.iter().map(move |&(i, j)| ([idx.as_slice(), &[i, j]].concat(), v * m.get(i, j))))
                    .collect();
            }
            for (idx, v) in partial {
                *acc.entry(idx).or_insert_with(Q::zero) += v;
            }
        }
        if acc.values().any(|v| !v.is_zero()) {
            return Ok(OracleOutcome { points: k + 1, witness: Some(format!("dims={} seed={}", dims.render(), pseed)) });
        }
    }
    Ok(OracleOutcome { points: cfg.points, witness: None })
}

/// Samples `x = y` at random points: `PROBABLE` when every point agrees, `FAIL` otherwise.
pub fn sampled_equality(name: &str, q: &Quiver, x: &Elem, y: &Elem, probe: Probe, cfg: OracleConfig) -> CheckRecord {
    let diff = x.clone() - y.clone();
    match oracle_zero(q, &diff, probe, cfg) {
        Ok(o) if o.vanished() => CheckRecord::new(name, crate::report::Status::Probable)
            .with_residual("0")
            .param("points", o.points.to_string())
            .param("seed", cfg.seed.to_string()),
        Ok(o) => CheckRecord::fail(name, "nonzero evaluation", o.witness.unwrap_or_default()),
        Err(e) => CheckRecord::error(name, e.to_string()),
    }
}
