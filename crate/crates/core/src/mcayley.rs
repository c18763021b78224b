//! Connection-set families and the m-Cayley digraph builder.
//!
//! A family `T` assigns a subset `T[i][j]` of a group `G` to every ordered
//! pair of parts `i, j` in `Z_m`. The built digraph has vertex set
//! `G_0 ∪ ... ∪ G_{m-1}` (vertex index `i * |G| + g`) and arcs
//! `g_i -> (t g)_j` for every `t` in `T[i][j]`. Right translations act as
//! automorphisms with the parts as orbits.

use crate::digraph::{Digraph, VertexSet};
use crate::group::{Elem, ElemSet, FiniteGroup};
use crate::perm::Perm;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McayleyError {
    #[error("identity in diagonal cell T[{0}][{0}] would create loops")]
    LoopCell(usize),
    #[error("cell element out of range for the group")]
    ElementOutOfRange,
    #[error("bad connection-set JSON: {0}")]
    BadJson(String),
}

/// The m x m family of connection sets over a fixed group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConnectionSets {
    m: usize,
    cells: Vec<ElemSet>,
}

/// Validation flags: orientedness (no digons, including the diagonal
/// self-paired cells) and loop freeness (identity never on the diagonal).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub oriented: bool,
    pub loop_free: bool,
}

impl ConnectionSets {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1);
        ConnectionSets { m, cells: vec![ElemSet::empty(); m * m] }
    }

    /// The bi-Cayley arrangement: `R = T[0][0]`, `L = T[1][1]`,
    /// `S = T[0][1]`, `T = T[1][0]`.
    pub fn bicay(r: ElemSet, l: ElemSet, s: ElemSet, t: ElemSet) -> Self {
        let mut c = ConnectionSets::new(2);
        c.set_cell(0, 0, r);
        c.set_cell(1, 1, l);
        c.set_cell(0, 1, s);
        c.set_cell(1, 0, t);
        c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cell(&self, i: usize, j: usize) -> &ElemSet {
        &self.cells[i * self.m + j]
    }

    pub fn set_cell(&mut self, i: usize, j: usize, set: ElemSet) {
        self.cells[i * self.m + j] = set;
    }

    pub fn insert(&mut self, i: usize, j: usize, e: Elem) {
        self.cells[i * self.m + j].insert(e);
    }

    /// Row-major traversal of the non-empty cells.
    pub fn nonempty_cells(&self) -> impl Iterator<Item = (usize, usize, &ElemSet)> {
        let m = self.m;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(move |(k, s)| (k / m, k % m, s))
    }

    /// Out-valency of part `i` (row sum of cell sizes).
    pub fn row_valency(&self, i: usize) -> usize {
        (0..self.m).map(|j| self.cell(i, j).len()).sum()
    }

    /// In-valency of part `j` (column sum of cell sizes).
    pub fn col_valency(&self, j: usize) -> usize {
        (0..self.m).map(|i| self.cell(i, j).len()).sum()
    }

    /// Computes both structural flags; a report, never an error.
    pub fn validate(&self, g: &FiniteGroup) -> ValidationReport {
        let loop_free = (0..self.m).all(|i| !self.cell(i, i).contains(g.identity()));
        let mut oriented = true;
        'outer: for i in 0..self.m {
            for j in 0..self.m {
                let back = g.set_inverse(self.cell(j, i));
                if !self.cell(i, j).is_disjoint(&back) {
                    oriented = false;
                    break 'outer;
                }
            }
        }
        ValidationReport { oriented, loop_free }
    }

    /// Applies a group automorphism to every cell simultaneously.
    pub fn map_elements(&self, sigma: &Perm) -> ConnectionSets {
        let mut out = ConnectionSets::new(self.m);
        for (i, j, set) in self.nonempty_cells() {
            out.set_cell(
                i,
                j,
                ElemSet::from_elems(set.iter().map(|e| Elem(sigma.apply(e.idx()) as u16))),
            );
        }
        out
    }

    /// Relabels parts: cell `(i, j)` moves to `(sigma(i), sigma(j))`.
    pub fn map_parts(&self, sigma: &[usize]) -> ConnectionSets {
        let mut out = ConnectionSets::new(self.m);
        for (i, j, set) in self.nonempty_cells() {
            out.set_cell(sigma[i], sigma[j], *set);
        }
        out
    }

    /// JSON schema `{group, m, cells: [{i, j, elements: [words]}]}`, cells
    /// row-major, elements ascending.
    pub fn to_json(&self, g: &FiniteGroup, group_name: &str) -> Value {
        let cells: Vec<Value> = self
            .nonempty_cells()
            .map(|(i, j, set)| {
                let elements: Vec<Value> =
                    set.iter().map(|e| Value::String(g.name(e).to_string())).collect();
                json!({"i": i, "j": j, "elements": elements})
            })
            .collect();
        json!({"group": group_name, "m": self.m, "cells": cells})
    }

    /// Reads the schema back; elements may be index numbers or words.
    pub fn from_json(v: &Value, g: &FiniteGroup) -> Result<Self, McayleyError> {
        let m = v
            .get("m")
            .and_then(Value::as_u64)
            .ok_or_else(|| McayleyError::BadJson("missing m".into()))? as usize;
        let mut sets = ConnectionSets::new(m);
        let cells = v
            .get("cells")
            .and_then(Value::as_array)
            .ok_or_else(|| McayleyError::BadJson("missing cells".into()))?;
        for cell in cells {
            let geti = |k: &str| {
                cell.get(k)
                    .and_then(Value::as_u64)
                    .ok_or_else(|| McayleyError::BadJson(format!("missing {k}")))
            };
            let (i, j) = (geti("i")? as usize, geti("j")? as usize);
            if i >= m || j >= m {
                return Err(McayleyError::BadJson("cell index out of range".into()));
            }
            let elems = cell
                .get("elements")
                .and_then(Value::as_array)
                .ok_or_else(|| McayleyError::BadJson("missing elements".into()))?;
            let mut set = ElemSet::empty();
            for e in elems {
                let elem = match e {
                    Value::Number(k) => {
                        let idx = k.as_u64().ok_or_else(|| {
                            McayleyError::BadJson("bad element index".into())
                        })? as usize;
                        if idx >= g.order() {
                            return Err(McayleyError::ElementOutOfRange);
                        }
                        Elem(idx as u16)
                    }
                    Value::String(w) => g
                        .element_from_word(w)
                        .map_err(|e| McayleyError::BadJson(e.to_string()))?,
                    _ => return Err(McayleyError::BadJson("bad element".into())),
                };
                set.insert(elem);
            }
            sets.set_cell(i, j, set);
        }
        Ok(sets)
    }
}

/// A built m-Cayley digraph together with its vertex indexing.
#[derive(Clone, Debug)]
pub struct MCayleyDigraph {
    pub digraph: Digraph,
    m: usize,
    group_order: usize,
}

impl MCayleyDigraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Vertex index of `g_i`.
    pub fn vertex(&self, g: Elem, part: usize) -> u32 {
        (part * self.group_order + g.idx()) as u32
    }

    pub fn part_of(&self, v: u32) -> usize {
        v as usize / self.group_order
    }

    pub fn elem_of(&self, v: u32) -> Elem {
        Elem((v as usize % self.group_order) as u16)
    }

    /// All vertices of part `i`.
    pub fn part_set(&self, i: usize) -> VertexSet {
        assert!(i < self.m);
        let n = self.digraph.vertex_count();
        VertexSet::from_vertices(
            n,
            (0..self.group_order).map(|g| (i * self.group_order + g) as u32),
        )
    }

    /// Vertices `{h_i | h in H}` for a subset `H` of the group.
    pub fn elem_set(&self, h: &ElemSet, i: usize) -> VertexSet {
        assert!(i < self.m);
        VertexSet::from_vertices(
            self.digraph.vertex_count(),
            h.iter().map(|e| self.vertex(e, i)),
        )
    }

    /// The right translation `R(g)`: `x_i -> (x g)_i`. Always an
    /// automorphism of the built digraph.
    pub fn right_action(&self, g: &FiniteGroup, a: Elem) -> Perm {
        let mut images = vec![0u32; self.digraph.vertex_count()];
        for i in 0..self.m {
            for x in g.elements() {
                images[self.vertex(x, i) as usize] = self.vertex(g.mul(x, a), i);
            }
        }
        Perm::from_images(images).expect("right action is a bijection")
    }

    /// Labels `"<word>_<part>"` for DOT output.
    pub fn labels(&self, g: &FiniteGroup) -> Vec<String> {
        (0..self.digraph.vertex_count() as u32)
            .map(|v| format!("{}_{}", g.name(self.elem_of(v)), self.part_of(v)))
            .collect()
    }
}

/// Builds the digraph of a connection-set family. Fails if some diagonal
/// cell contains the identity (a loop).
pub fn build(g: &FiniteGroup, t: &ConnectionSets) -> Result<MCayleyDigraph, McayleyError> {
    let m = t.m();
    for i in 0..m {
        if t.cell(i, i).contains(g.identity()) {
            return Err(McayleyError::LoopCell(i));
        }
        for j in 0..m {
            if t.cell(i, j).iter().any(|e| e.idx() >= g.order()) {
                return Err(McayleyError::ElementOutOfRange);
            }
        }
    }
    let n = m * g.order();
    let mut arcs = Vec::new();
    for (i, j, set) in t.nonempty_cells() {
        for x in g.elements() {
            for tt in set.iter() {
                arcs.push((
                    (i * g.order() + x.idx()) as u32,
                    (j * g.order() + g.mul(tt, x).idx()) as u32,
                ));
            }
        }
    }
    let digraph = Digraph::from_arcs(n, &arcs).map_err(|_| McayleyError::LoopCell(0))?;
    Ok(MCayleyDigraph { digraph, m, group_order: g.order() })
}
