//! The `ncp` command line: input resolution, job dispatch and JSON reports.
//!
//! Exit codes: 0 when every check is PROVED or PROBABLE, 1 on any FAIL, 2 on
//! any ERROR (including unreadable input).

mod args;

use std::fs;
use std::path::Path;
use std::time::Instant;

pub use args::{Builtin, Cli, Command, PointArgs, RepAction, RepCheck, Source, VerifyTarget};

use crate::algebra_core::file::read_quiver;
use crate::algebra_core::{fmt_elem, necklace, parse_elem, parse_tensor, Elem, Kind, Quiver};
use crate::brackets::{bracket, check_double_poisson, check_loday, Bracket, BracketFile, DoubleBracketTable};
use crate::error::{Error, Result};
use crate::forms::{check_bisymplectic_equivalence, standard_bisymplectic, BisymplecticConfig};
use crate::fusion::{check_fusion_coherence, fuse_quiver_ids, fuse_structure};
use crate::report::{worst, CheckRecord, JobReport, Status};
use crate::repspace::{
    check_gauge_rep, check_jacobi_rep, check_lie_poisson, check_moment_rep, check_trace_rep, oracle_zero, oracle_zero_tensor, random_point, DimVector,
    OracleConfig, Probe,
};
use crate::sample;
use crate::structures::{general_quasi, one_pair_quasi, standard_hamiltonian, standard_table, HamiltonianStructure, StructureFile};

/// 0 ok, 1 FAIL, 2 ERROR.
pub fn exit_code(report: &JobReport) -> i32 {
    match worst(&report.checks) {
        Status::Proved | Status::Probable => 0,
        Status::Fail => 1,
        Status::Error => 2,
    }
}

/// Runs a parsed command. `echo` is the command line recorded in the report.
pub fn execute(cli: &Cli, echo: &str) -> JobReport {
    let mut report = JobReport::new(echo);
    report.output("oracle_fallback", if cli.oracle_fallback { "on" } else { "off" });
    let mut job = Job { cli, report };
    if let Err(e) = job.dispatch() {
        job.report.push(CheckRecord::error("input", e.to_string()));
    }
    job.report.checks.sort_by(|a, b| a.name.cmp(&b.name));
    job.report
}

struct Job<'a> {
    cli: &'a Cli,
    report: JobReport,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn csv(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

impl Source {
    /// The quiver of `--quiver`, doubled when `double` is set and it is not yet doubled.
    fn quiver(&self, double: bool) -> Result<Quiver> {
        let path = self.quiver.as_ref().ok_or_else(|| Error::Invalid("--quiver is required".into()))?;
        let mut q = read_quiver(&read(path)?)?;
        if double && !q.is_doubled() {
            q = q.double()?;
        }
        if let Some(o) = &self.order {
            q = q.with_order(&csv(o))?;
        }
        Ok(q)
    }

    fn structure(&self) -> Result<HamiltonianStructure> {
        if let Some(path) = &self.structure {
            return HamiltonianStructure::from_file(&StructureFile::from_json(&read(path)?)?);
        }
        match self.builtin {
            Some(Builtin::Hamiltonian) => standard_hamiltonian(&self.quiver(true)?),
            Some(Builtin::GeneralQuasi) => general_quasi(&self.quiver(true)?),
            Some(Builtin::OnePair) => Ok(one_pair_quasi()),
            Some(b) => Err(Error::Invalid(format!("builtin {:?} is a bracket, not a structure", b))),
            None => Err(Error::Invalid("give --structure or a structure --builtin".into())),
        }
    }

    fn bracket(&self) -> Result<Bracket> {
        if let Some(path) = &self.bracket {
            return Ok(bracket(DoubleBracketTable::from_file(&BracketFile::from_json(&read(path)?)?)?));
        }
        let q = sample::loop_quiver();
        match self.builtin {
            Some(Builtin::LoopLinear) => Ok(bracket(DoubleBracketTable::new(q).with("t", "t", "t ⊗ 1 - 1 ⊗ t")?)),
            Some(Builtin::LoopQuadratic) => Ok(bracket(DoubleBracketTable::new(q).with("t", "t", "t t ⊗ t - t ⊗ t t")?)),
            Some(_) => self.structure()?.bracket(),
            None if self.structure.is_some() => self.structure()?.bracket(),
            None => Ok(bracket(standard_table(&self.quiver(true)?)?)),
        }
    }
}

impl Job<'_> {
    fn dispatch(&mut self) -> Result<()> {
        match &self.cli.command {
            Command::Build { src, out } => {
                let s = src.structure()?;
                let text = s.to_file().to_json();
                match out {
                    Some(p) => {
                        write(p, &text)?;
                        self.report.output("out", p.display().to_string());
                    }
                    None => self.report.output("structure", text),
                }
                Ok(())
            }
            Command::Verify { target, src, seed, samples, form } => self.verify(*target, src, *seed, *samples, form.as_deref()),
            Command::Fuse { src, merge, coherence, out } => self.fuse(src, merge.as_deref(), *coherence, out.as_deref()),
            Command::Rep { action } => match action {
                RepAction::Eval { src, point, expr } => self.rep_eval(src, point, expr),
                RepAction::Check { src, point, check } => self.rep_check(src, point, *check),
            },
            Command::Necklace { src, x, y } => {
                let b = src.bracket()?;
                let q = b.quiver().clone();
                let (x, y) = (parse_elem(&q, x)?, parse_elem(&q, y)?);
                let v = necklace(&b.single(&x.filter(|w| w.is_closed()), &y), &q);
                self.report.output("value", fmt_elem(&q, &v));
                Ok(())
            }
        }
    }

    /// Runs `f`, stamps wall time when requested and applies the oracle fallback to failures.
    fn timed(&mut self, q: Option<&Quiver>, f: impl FnOnce() -> Vec<CheckRecord>) {
        let start = Instant::now();
        let mut rs = f();
        let ms = start.elapsed().as_millis() as u64;
        for r in rs.iter_mut() {
            if self.cli.timings {
                r.wall_ms = Some(ms);
            }
            if self.cli.oracle_fallback && r.status == Status::Fail {
                if let Some(q) = q {
                    oracle_annotate(q, r);
                }
            }
        }
        self.report.extend(rs);
    }

    fn verify(&mut self, target: VerifyTarget, src: &Source, seed: u64, samples: usize, form: Option<&str>) -> Result<()> {
        match target {
            VerifyTarget::DoublePoisson => {
                let b = src.bracket()?;
                let q = b.quiver().clone();
                self.timed(Some(&q), || vec![check_double_poisson(&b)]);
                if src.structure.is_some() || matches!(src.builtin, Some(Builtin::Hamiltonian)) {
                    let s = src.structure()?;
                    self.timed(Some(&q), || vec![s.check_bivector()]);
                }
            }
            VerifyTarget::QuasiPoisson => {
                let s = src.structure()?;
                self.timed(Some(&s.quiver), || vec![s.check_bivector(), s.check_quasi_bracket()]);
            }
            VerifyTarget::Moment => {
                let s = src.structure()?;
                self.timed(Some(&s.quiver), || vec![s.check_moment()]);
            }
            VerifyTarget::Loday => {
                let b = src.bracket()?;
                let q = b.quiver().clone();
                let triples = random_triples(&q, seed, samples);
                self.timed(Some(&q), || vec![check_loday(&b, &triples).param("seed", seed.to_string())]);
            }
            VerifyTarget::Bisymplectic => {
                let q = src.quiver(true)?;
                let omega = match form {
                    Some(f) => parse_elem(&q, f)?,
                    None => standard_bisymplectic(&q)?,
                };
                self.report.output("form", fmt_elem(&q, &omega));
                self.timed(None, || check_bisymplectic_equivalence(&q, &omega, BisymplecticConfig::default()));
            }
        }
        Ok(())
    }

    fn fuse(&mut self, src: &Source, merge: Option<&[String]>, coherence: bool, out: Option<&Path>) -> Result<()> {
        if coherence {
            let q = src.quiver(true)?;
            self.timed(None, || vec![check_fusion_coherence(&q)]);
            return Ok(());
        }
        let vs = merge.ok_or_else(|| Error::Invalid("--merge V W is required".into()))?;
        let s = src.structure()?;
        let f = fuse_quiver_ids(&s.quiver, &vs[0], &vs[1])?;
        let t = fuse_structure(&s, &f)?;
        let text = t.to_file().to_json();
        match out {
            Some(p) => {
                write(p, &text)?;
                self.report.output("out", p.display().to_string());
            }
            None => self.report.output("structure", text),
        }
        self.timed(Some(&t.quiver), || vec![t.check_bivector(), t.check_moment()]);
        Ok(())
    }

    fn rep_eval(&mut self, src: &Source, pa: &PointArgs, expr: &str) -> Result<()> {
        let q = rep_quiver(src)?;
        let p = random_point(&q, &DimVector::parse(&pa.dims)?, pa.seed)?;
        let x = parse_elem(&q, expr)?;
        self.report.output("point", p.render());
        self.report.output("value", p.eval(&x)?.render());
        Ok(())
    }

    fn rep_check(&mut self, src: &Source, pa: &PointArgs, check: RepCheck) -> Result<()> {
        let dims = DimVector::parse(&pa.dims)?;
        let seed = pa.seed;
        match check {
            RepCheck::LiePoisson => {
                self.timed(None, || vec![check_lie_poisson(dims.total(), seed)]);
            }
            RepCheck::Moment => {
                let s = src.structure()?;
                let p = random_point(&s.quiver, &dims, seed)?;
                self.timed(None, || check_moment_rep(&s, &p, Some(seed)));
            }
            RepCheck::Gauge => {
                let q = rep_quiver(src)?;
                let p = random_point(&q, &dims, seed)?;
                self.timed(None, || vec![check_gauge_rep(&p, Some(seed))]);
            }
            RepCheck::Jacobi => {
                let b = src.bracket()?;
                let p = random_point(b.quiver(), &dims, seed)?;
                let gens = arrows(b.quiver());
                self.timed(None, || {
                    let mut rs = Vec::new();
                    for x in &gens {
                        for y in &gens {
                            for z in &gens {
                                rs.extend(check_jacobi_rep(&b, x, y, z, &p, Some(seed)));
                            }
                        }
                    }
                    merge(rs)
                });
            }
            RepCheck::Trace => {
                let b = src.bracket()?;
                let q = b.quiver().clone();
                let p = random_point(&q, &dims, seed)?;
                let mut r = sample::rng(seed);
                let kinds = [Kind::Arrow];
                let pairs: Vec<(Elem, Elem)> = (0..5)
                    .map(|_| {
                        let x = Elem::word(sample::random_closed_word(&q, &mut r, 3, &kinds));
                        let y = Elem::word(sample::random_closed_word(&q, &mut r, 3, &kinds));
                        (x, y)
                    })
                    .collect();
                self.timed(None, || merge(pairs.iter().map(|(x, y)| check_trace_rep(&b, x, y, &p, Some(seed))).collect()));
            }
        }
        Ok(())
    }
}

fn rep_quiver(src: &Source) -> Result<Quiver> {
    if src.quiver.is_some() {
        src.quiver(false)
    } else if src.structure.is_some() || src.builtin.is_some() {
        Ok(src.bracket()?.quiver().clone())
    } else {
        Err(Error::Invalid("give --quiver, --structure or --builtin".into()))
    }
}

fn arrows(q: &Quiver) -> Vec<Elem> {
    (0..q.n_arrows()).map(|a| Elem::letter(q.letter(Kind::Arrow, a))).collect()
}

/// Random word triples for the Loday identity, arrows and available inverse letters.
fn random_triples(q: &Quiver, seed: u64, n: usize) -> Vec<(Elem, Elem, Elem)> {
    let mut kinds = vec![Kind::Arrow];
    if (0..q.n_arrows()).any(|a| q.has_inverse(a)) {
        kinds.push(Kind::Inverse);
    }
    let mut r = sample::rng(seed);
    (0..n)
        .map(|_| {
            let mut w = || Elem::word(sample::random_word(q, &mut r, 3, &kinds));
            (w(), w(), w())
        })
        .collect()
}

/// One record per name: the first non-passing record, or a single pass with the case count.
fn merge(rs: Vec<CheckRecord>) -> Vec<CheckRecord> {
    let mut names: Vec<String> = rs.iter().map(|r| r.name.clone()).collect();
    names.sort();
    names.dedup();
    names
        .into_iter()
        .map(|n| {
            let group: Vec<&CheckRecord> = rs.iter().filter(|r| r.name == n).collect();
            match group.iter().find(|r| !r.is_ok()) {
                Some(bad) => (*bad).clone(),
                None => group[0].clone().param("cases", group.len().to_string()),
            }
        })
        .collect()
}

/// Parses the residual back into an element or tensor and samples it at random points.
fn oracle_annotate(q: &Quiver, r: &mut CheckRecord) {
    let Some(res) = r.residual.as_deref() else { return };
    let probe = if r.name.starts_with("bivector.") { Probe::Trace } else { Probe::Matrix };
    let cfg = OracleConfig::default();
    let outcome = match parse_elem(q, res) {
        Ok(x) => Some(oracle_zero(q, &x, probe, cfg)),
        Err(_) => (2..=3).find_map(|k| parse_tensor(q, res, k).ok()).map(|t| oracle_zero_tensor(q, &t, cfg)),
    };
    let note = match outcome {
        None => "not applicable: residual is not an element or tensor".to_string(),
        Some(Ok(o)) => o.summary(),
        Some(Err(e)) => format!("not applicable: {}", e),
    };
    r.params.insert("oracle".into(), note);
}
