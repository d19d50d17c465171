use crate::algebra_core::{fmt_elem, fmt_tensor, localize, rat, Elem, Kind, Perm, Quiver, Tensor};
use crate::error::Result;
use crate::polyvectors::{gauge_element, NBracket};
use crate::report::CheckRecord;

use super::engine::{Engine, LetterTable};

/// Arrow letters plus every available inverse letter, with display names.
pub fn generators(q: &Quiver) -> Vec<(String, Elem)> {
    let mut out = Vec::new();
    for a in 0..q.n_arrows() {
        out.push((q.arrow(a).id.clone(), Elem::letter(q.letter(Kind::Arrow, a))));
    }
    for a in 0..q.n_arrows() {
        if q.has_inverse(a) {
            out.push((format!("inv({})", q.arrow(a).id), Elem::letter(q.letter(Kind::Inverse, a))));
        }
    }
    out
}

/// `{{x, y}} + τ_(12){{y, x}}` on generator pairs; the first nonzero one, if any.
pub fn antisymmetry_defect<T: LetterTable>(engine: &Engine<T>) -> Option<(String, Tensor)> {
    let q = engine.quiver();
    let gens = generators(q);
    for (i, (na, a)) in gens.iter().enumerate() {
        for (nb, b) in &gens[i..] {
            let r = engine.bracket(a, b) + engine.bracket(b, a).permute(&Perm(vec![1, 0]), true).expect("arity 2");
            if !r.is_zero() {
                return Some((format!("({}, {})", na, nb), r));
            }
        }
    }
    None
}

/// The triple bracket vanishes on all generator triples. Antisymmetry on
/// generators is checked first since the reduction to generators needs it.
pub fn check_double_poisson<T: LetterTable>(engine: &Engine<T>) -> CheckRecord {
    let q = engine.quiver();
    if let Some((w, r)) = antisymmetry_defect(engine) {
        return CheckRecord::fail("double-poisson", fmt_tensor(q, &r), w).param("failed", "antisymmetry");
    }
    let gens = generators(q);
    let mut triples = 0usize;
    for (na, a) in &gens {
        for (nb, b) in &gens {
            for (nc, c) in &gens {
                triples += 1;
                let t = engine.triple(a, b, c);
                if !t.is_zero() {
                    return CheckRecord::fail("double-poisson", fmt_tensor(q, &t), format!("({}, {}, {})", na, nb, nc))
                        .param("triples_checked", triples.to_string());
                }
            }
        }
    }
    CheckRecord::proved("double-poisson").with_residual("0").param("triples_checked", triples.to_string())
}

/// `{{a,b,c}} - (1/12) Σ_i {{a,b,c}}_{E_i^3}`.
pub fn quasi_poisson_defect<T: LetterTable>(engine: &Engine<T>, cubes: &[NBracket], a: &Elem, b: &Elem, c: &Elem) -> Result<Tensor> {
    let mut rhs = Tensor::zero(3);
    for nb in cubes {
        rhs.add_scaled(&nb.eval(&[a.clone(), b.clone(), c.clone()])?, &rat(1, 12));
    }
    Ok(engine.triple(a, b, c) - rhs)
}

/// The triple bracket equals `(1/12) Σ_i {{-,-,-}}_{E_i^3}` on all generator triples.
pub fn check_quasi_poisson<T: LetterTable>(engine: &Engine<T>) -> CheckRecord {
    let q = engine.quiver();
    if let Some((w, r)) = antisymmetry_defect(engine) {
        return CheckRecord::fail("quasi-poisson", fmt_tensor(q, &r), w).param("failed", "antisymmetry");
    }
    let cubes_el: Vec<Elem> = (0..q.n_vertices()).map(|i| gauge_element(q, i).expect("vertex").pow(3)).collect();
    let cubes: Result<Vec<NBracket>> = cubes_el.iter().map(|e| NBracket::with_arity(q, e, 3)).collect();
    let cubes = match cubes {
        Ok(c) => c,
        Err(e) => return CheckRecord::error("quasi-poisson", e.to_string()),
    };
    let gens = generators(q);
    let mut triples = 0usize;
    for (na, a) in &gens {
        for (nb, b) in &gens {
            for (nc, c) in &gens {
                triples += 1;
                match quasi_poisson_defect(engine, &cubes, a, b, c) {
                    Err(e) => return CheckRecord::error("quasi-poisson", e.to_string()),
                    Ok(t) if !t.is_zero() => {
                        return CheckRecord::fail("quasi-poisson", fmt_tensor(q, &t), format!("({}, {}, {})", na, nb, nc))
                            .param("triples_checked", triples.to_string())
                    }
                    Ok(_) => {}
                }
            }
        }
    }
    CheckRecord::proved("quasi-poisson").with_residual("0").param("triples_checked", triples.to_string())
}

/// `{a,{b,c}} = {{a,b},c} + {b,{a,c}}` on each sample.
pub fn check_loday<T: LetterTable>(engine: &Engine<T>, samples: &[(Elem, Elem, Elem)]) -> CheckRecord {
    let q = engine.quiver();
    for (a, b, c) in samples {
        let lhs = engine.single(a, &engine.single(b, c));
        let rhs = engine.single(&engine.single(a, b), c) + engine.single(b, &engine.single(a, c));
        let r = localize(&(lhs - rhs), q);
        if !r.is_zero() {
            return CheckRecord::fail(
                "loday",
                fmt_elem(q, &r),
                format!("({}, {}, {})", fmt_elem(q, a), fmt_elem(q, b), fmt_elem(q, c)),
            )
            .param("samples", samples.len().to_string());
        }
    }
    CheckRecord::proved("loday").with_residual("0").param("samples", samples.len().to_string())
}
