use std::collections::HashMap;

use crate::error::{Error, Result};

use super::word::{Kind, Letter};

/// An arrow `id: tail -> head`, endpoints given as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver with optional doubling data, arrow ordering and
/// a set of arrows `a` for which `e + a a*` is inverted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    doubled: bool,
    epsilon: Vec<i8>,
    star: Vec<Option<usize>>,
    order: Vec<usize>,
    inverted: Vec<bool>,
}

impl Quiver {
    /// Builds an undoubled quiver. Arrows are `(id, tail, head)` with vertex ids.
    pub fn new<V: AsRef<str>>(vertices: &[V], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut out = Vec::with_capacity(arrows.len());
        let mut ids = HashMap::new();
        for (id, t, h) in arrows {
            if ids.insert(id.to_string(), ()).is_some() {
                return Err(Error::DuplicateArrow(id.to_string()));
            }
            let tail = *seen.get(*t).ok_or_else(|| Error::UnknownVertex(t.to_string()))?;
            let head = *seen.get(*h).ok_or_else(|| Error::UnknownVertex(h.to_string()))?;
            out.push(Arrow { id: id.to_string(), tail, head });
        }
        let n = out.len();
        Ok(Quiver {
            vertices,
            arrows: out,
            doubled: false,
            epsilon: vec![1; n],
            star: vec![None; n],
            order: (0..n).collect(),
            inverted: vec![false; n],
        })
    }

    /// The double: each arrow `a` gains `a*` placed right after it, with
    /// `epsilon(a) = 1` and `epsilon(a*) = -1`.
    pub fn double(&self) -> Result<Quiver> {
        if self.doubled {
            return Err(Error::AlreadyDoubled);
        }
        let mut arrows = Vec::with_capacity(2 * self.arrows.len());
        let mut epsilon = Vec::new();
        let mut star = Vec::new();
        let mut inverted = Vec::new();
        let mut new_index = vec![0; self.arrows.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            new_index[i] = arrows.len();
            let k = arrows.len();
            arrows.push(a.clone());
            arrows.push(Arrow { id: format!("{}*", a.id), tail: a.head, head: a.tail });
            epsilon.extend([1, -1]);
            star.extend([Some(k + 1), Some(k)]);
            inverted.extend([self.inverted[i], false]);
        }
        let mut ids = HashMap::new();
        for a in &arrows {
            if ids.insert(a.id.clone(), ()).is_some() {
                return Err(Error::DuplicateArrow(a.id.clone()));
            }
        }
        let order = self.order.iter().flat_map(|&i| [new_index[i], new_index[i] + 1]).collect();
        Ok(Quiver { vertices: self.vertices.clone(), arrows, doubled: true, epsilon, star, order, inverted })
    }

    /// Replaces the arrow ordering. Every arrow must be listed exactly once.
    pub fn with_order<S: AsRef<str>>(&self, ids: &[S]) -> Result<Quiver> {
        let order: Vec<usize> = ids.iter().map(|s| self.arrow_index(s.as_ref())).collect::<Result<_>>()?;
        self.with_order_indices(order)
    }

    pub fn with_order_indices(&self, order: Vec<usize>) -> Result<Quiver> {
        let mut seen = vec![false; self.arrows.len()];
        for &i in &order {
            if i >= seen.len() || seen[i] {
                return Err(Error::Ordering("arrow listed twice or out of range".into()));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Ordering("ordering is not total over the arrows".into()));
        }
        let mut q = self.clone();
        q.order = order;
        Ok(q)
    }

    /// Marks `e + a a*` invertible for the listed arrows (doubled quivers only).
    pub fn with_inverted<S: AsRef<str>>(&self, ids: &[S]) -> Result<Quiver> {
        let mut q = self.clone();
        for s in ids {
            let i = self.arrow_index(s.as_ref())?;
            if self.star[i].is_none() {
                return Err(Error::Invalid(format!("arrow `{}` has no opposite arrow to invert e + a a*", s.as_ref())));
            }
            q.inverted[i] = true;
        }
        Ok(q)
    }

    /// Marks every arrow of a doubled quiver as inverted.
    pub fn with_all_inverted(&self) -> Result<Quiver> {
        if !self.doubled {
            return Err(Error::NotDoubled);
        }
        let mut q = self.clone();
        q.inverted = vec![true; self.arrows.len()];
        Ok(q)
    }

    pub(crate) fn from_parts(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        doubled: bool,
        epsilon: Vec<i8>,
        star: Vec<Option<usize>>,
        order: Vec<usize>,
        inverted: Vec<bool>,
    ) -> Quiver {
        Quiver { vertices, arrows, doubled, epsilon, star, order, inverted }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }
    pub fn is_doubled(&self) -> bool {
        self.doubled
    }
    pub fn epsilon(&self, i: usize) -> i8 {
        self.epsilon[i]
    }
    pub fn star(&self, i: usize) -> Option<usize> {
        self.star[i]
    }
    /// Arrow indices in the chosen total order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
    pub fn order_rank(&self, i: usize) -> usize {
        self.order.iter().position(|&j| j == i).expect("order is total")
    }
    pub fn is_inverted(&self, i: usize) -> bool {
        self.inverted[i]
    }
    pub fn inverted_flags(&self) -> &[bool] {
        &self.inverted
    }

    /// Arrows of `Q` inside a doubled quiver (those with `epsilon = 1`).
    pub fn base_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.epsilon[i] == 1).collect()
    }

    /// True when `e + a a*` or `e + a* a` has been inverted.
    pub fn has_inverse(&self, i: usize) -> bool {
        match self.star[i] {
            Some(j) => self.inverted[i] || self.inverted[j],
            None => false,
        }
    }

    /// The arrow whose inverse letter is kept in normal forms for the pair
    /// `{a, a*}`: the `epsilon = 1` arrow when it is inverted, else its partner.
    pub fn canonical_inverse(&self, i: usize) -> Option<usize> {
        let j = self.star[i]?;
        if !(self.inverted[i] || self.inverted[j]) {
            return None;
        }
        let (pos, neg) = if self.epsilon[i] == 1 { (i, j) } else { (j, i) };
        Some(if self.inverted[pos] { pos } else { neg })
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.id == id).ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn tail(&self, i: usize) -> usize {
        self.arrows[i].tail
    }
    pub fn head(&self, i: usize) -> usize {
        self.arrows[i].head
    }

    /// A letter of the given kind on arrow `i`, with its endpoints filled in.
    pub fn letter(&self, kind: Kind, i: usize) -> Letter {
        let a = &self.arrows[i];
        let (src, tgt) = match kind {
            Kind::Arrow | Kind::Differential => (a.tail, a.head),
            Kind::Inverse => (a.tail, a.tail),
            Kind::Derivation => (a.head, a.tail),
        };
        Letter::new(kind, i as u32, src as u32, tgt as u32)
    }

    /// Checks that a letter refers to this quiver with consistent endpoints.
    pub fn check_letter(&self, l: &Letter) -> Result<()> {
        let i = l.arrow as usize;
        if i >= self.arrows.len() || self.letter(l.kind, i) != *l {
            return Err(Error::MixedQuiver(format!("letter {:?}", l)));
        }
        if l.kind == Kind::Inverse && !self.has_inverse(i) {
            return Err(Error::Invalid(format!("no inverse available for arrow `{}`", self.arrows[i].id)));
        }
        Ok(())
    }

    /// Relabels vertices by a permutation `perm[old] = new`; arrows keep their indices.
    pub fn relabel_vertices(&self, names: &[String], perm: &[usize]) -> Quiver {
        let mut vertices = vec![String::new(); self.vertices.len()];
        for (old, &new) in perm.iter().enumerate() {
            vertices[new] = names[old].clone();
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), tail: perm[a.tail], head: perm[a.head] })
            .collect();
        Quiver { vertices, arrows, ..self.clone() }
    }
}
