//! Double brackets on a path algebra given by their values on arrow pairs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra_core::file::QuiverFile;
use crate::algebra_core::{fmt_tensor, parse_tensor, Kind, Letter, Perm, Quiver, Tensor};
use crate::error::{Error, Result};

use super::engine::LetterTable;

/// Degree 0 double bracket on `kQ` (or its localization) fixed by the values
/// `{{a, b}}` for arrow indices `a <= b`; the rest follows from antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleBracketTable {
    quiver: Quiver,
    values: BTreeMap<(usize, usize), Tensor>,
}

fn swap(t: &Tensor) -> Tensor {
    t.permute(&Perm(vec![1, 0]), false).expect("arity 2")
}

impl DoubleBracketTable {
    pub fn new(quiver: Quiver) -> DoubleBracketTable {
        DoubleBracketTable { quiver, values: BTreeMap::new() }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Sets `{{a, b}}`; the reversed pair is derived as `-τ_(12)` of it.
    pub fn set(&mut self, a: usize, b: usize, value: Tensor) -> Result<()> {
        let q = &self.quiver;
        if a >= q.n_arrows() || b >= q.n_arrows() {
            return Err(Error::UnknownArrow(format!("index {}", a.max(b))));
        }
        if value.arity() != 2 {
            return Err(Error::Arity { expected: 2, found: value.arity() });
        }
        let name = |i: usize| q.arrow(i).id.clone();
        for (ws, _) in value.terms() {
            for w in ws {
                for l in w.letters() {
                    q.check_letter(l)?;
                    if !matches!(l.kind, Kind::Arrow | Kind::Inverse) {
                        return Err(Error::Degree(format!("value of {{{{{}, {}}}}} leaves the path algebra", name(a), name(b))));
                    }
                }
            }
            // {{a,b}}' in e_t(b) A e_h(a), {{a,b}}'' in e_t(a) A e_h(b)
            let ok = ws[0].src() == q.tail(b) && ws[0].tgt() == q.head(a) && ws[1].src() == q.tail(a) && ws[1].tgt() == q.head(b);
            if !ok {
                return Err(Error::Incomposable(format!("value of {{{{{}, {}}}}} has a term outside the allowed corners", name(a), name(b))));
            }
        }
        if a == b && value != -swap(&value) {
            return Err(Error::Invalid(format!("{{{{{}, {}}}}} must equal minus its flip", name(a), name(a))));
        }
        let (key, v) = if a <= b { ((a, b), value) } else { ((b, a), -swap(&value)) };
        if v.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
        Ok(())
    }

    /// Like [`DoubleBracketTable::set`] without the diagonal antisymmetry test.
    ///
    /// Only for probing deliberately broken brackets; the engine then no longer
    /// describes a double bracket and the checks report where it fails.
    pub fn set_unchecked(&mut self, a: usize, value: Tensor) -> Result<()> {
        self.set(a, a, Tensor::zero(2))?;
        let probe = value.clone() - swap(&value);
        self.set(a, a, probe.scale(&crate::algebra_core::rat(1, 2)))?;
        self.values.insert((a, a), value);
        Ok(())
    }

    pub fn with(mut self, a: &str, b: &str, value: &str) -> Result<DoubleBracketTable> {
        let ia = self.quiver.arrow_index(a)?;
        let ib = self.quiver.arrow_index(b)?;
        let v = parse_tensor(&self.quiver, value, 2)?;
        self.set(ia, ib, v)?;
        Ok(self)
    }

    /// `{{a, b}}` for arrow indices.
    pub fn value(&self, a: usize, b: usize) -> Tensor {
        if a <= b {
            self.values.get(&(a, b)).cloned().unwrap_or_else(|| Tensor::zero(2))
        } else {
            self.values.get(&(b, a)).map(|t| -swap(t)).unwrap_or_else(|| Tensor::zero(2))
        }
    }

    /// Stored pairs `a <= b` with nonzero values.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Tensor)> {
        self.values.iter()
    }

    pub fn to_file(&self) -> BracketFile {
        BracketFile {
            quiver: QuiverFile::from_quiver(&self.quiver),
            bracket: self
                .values
                .iter()
                .map(|(&(a, b), v)| BracketEntry {
                    a: self.quiver.arrow(a).id.clone(),
                    b: self.quiver.arrow(b).id.clone(),
                    value: fmt_tensor(&self.quiver, v),
                })
                .collect(),
        }
    }

    pub fn from_file(f: &BracketFile) -> Result<DoubleBracketTable> {
        let mut t = DoubleBracketTable::new(f.quiver.to_quiver()?);
        for e in &f.bracket {
            t = t.with(&e.a, &e.b, &e.value)?;
        }
        Ok(t)
    }
}

impl LetterTable for DoubleBracketTable {
    fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    fn odd(&self) -> bool {
        false
    }
    fn letters(&self, x: &Letter, y: &Letter) -> Tensor {
        debug_assert!(x.kind == Kind::Arrow && y.kind == Kind::Arrow);
        self.value(x.arrow as usize, y.arrow as usize)
    }
    fn accepts(&self, kind: Kind) -> bool {
        kind == Kind::Arrow
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub a: String,
    pub b: String,
    pub value: String,
}

/// `{quiver, bracket: [{a, b, value}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketFile {
    pub quiver: QuiverFile,
    pub bracket: Vec<BracketEntry>,
}

impl BracketFile {
    pub fn from_json(text: &str) -> Result<BracketFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })
    }
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bracket documents serialize")
    }
}
