//! Finite digraphs with dual adjacency and the structural statistics the
//! verification lemmas quantify over: neighborhoods, arc counts between
//! vertex sets, induced subdigraphs, regularity, orientedness, oriented
//! 3-cycles and DOT export.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DigraphError {
    #[error("arc ({0},{1}) is out of range")]
    ArcOutOfRange(u32, u32),
    #[error("loop at vertex {0}")]
    LoopArc(u32),
    #[error("induced subgraph needs a non-empty vertex set")]
    EmptyVertexSet,
    #[error("vertex count must be positive")]
    EmptyVertexCount,
    #[error("malformed DOT input: {0}")]
    BadDot(String),
}

/// A loop-free digraph on vertices `0..n` with sorted out- and in-adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
}

/// A subset of vertices, stored as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, bits: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v as u32);
        }
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = u32>>(n: usize, vs: I) -> Self {
        let mut s = VertexSet::empty(n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: u32) {
        assert!((v as usize) < self.n);
        self.bits[v as usize / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: u32) -> bool {
        self.bits[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n as u32).filter(move |&v| self.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        }
    }
}

impl Digraph {
    /// Builds a digraph from a list of arcs. Duplicate arcs collapse; loops
    /// are rejected.
    pub fn from_arcs(n: usize, arcs: &[(u32, u32)]) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::EmptyVertexCount);
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u as usize >= n || v as usize >= n {
                return Err(DigraphError::ArcOutOfRange(u, v));
            }
            if u == v {
                return Err(DigraphError::LoopArc(u));
            }
            out[u as usize].push(v);
            inn[v as usize].push(u);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Digraph { n, out, inn })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count_total(&self) -> usize {
        self.out.iter().map(|l| l.len()).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u as u32, v)))
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].binary_search(&v).is_ok()
    }

    pub fn out_list(&self, v: u32) -> &[u32] {
        &self.out[v as usize]
    }

    pub fn in_list(&self, v: u32) -> &[u32] {
        &self.inn[v as usize]
    }

    pub fn out_neighbors(&self, v: u32) -> VertexSet {
        VertexSet::from_vertices(self.n, self.out[v as usize].iter().copied())
    }

    pub fn in_neighbors(&self, v: u32) -> VertexSet {
        VertexSet::from_vertices(self.n, self.inn[v as usize].iter().copied())
    }

    /// Number of arcs of the digraph inside `X x Y`.
    pub fn arc_count(&self, x: &VertexSet, y: &VertexSet) -> usize {
        x.iter()
            .map(|u| self.out[u as usize].iter().filter(|&&v| y.contains(v)).count())
            .sum()
    }

    /// Induced subdigraph on a non-empty vertex set, re-indexed to
    /// `0..|X|`; also returns the map from new index to original vertex.
    pub fn induced(&self, x: &VertexSet) -> Result<(Digraph, Vec<u32>), DigraphError> {
        if x.is_empty() {
            return Err(DigraphError::EmptyVertexSet);
        }
        let verts: Vec<u32> = x.iter().collect();
        let mut back = vec![u32::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            back[v as usize] = i as u32;
        }
        let mut arcs = Vec::new();
        for &u in &verts {
            for &v in &self.out[u as usize] {
                if x.contains(v) {
                    arcs.push((back[u as usize], back[v as usize]));
                }
            }
        }
        Ok((Digraph::from_arcs(verts.len(), &arcs)?, verts))
    }

    /// No digons: `(u,v)` and `(v,u)` never both present.
    pub fn is_oriented(&self) -> bool {
        self.arcs().all(|(u, v)| !self.has_arc(v, u))
    }

    /// The common valency if every vertex has equal in- and out-degree `d`.
    pub fn is_regular(&self) -> Option<usize> {
        let d = self.out[0].len();
        for v in 0..self.n {
            if self.out[v].len() != d || self.inn[v].len() != d {
                return None;
            }
        }
        Some(d)
    }

    /// All directed 3-cycles, one triple per cycle, rotated so the smallest
    /// vertex comes first; ascending order.
    pub fn oriented_3cycles(&self) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for u in 0..self.n as u32 {
            for &v in &self.out[u as usize] {
                if v <= u {
                    continue;
                }
                for &w in &self.out[v as usize] {
                    if w <= u || w == v {
                        continue;
                    }
                    if self.has_arc(w, u) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected_underlying(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head] as usize;
            head += 1;
            for &w in self.out[v].iter().chain(self.inn[v].iter()) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Graphviz DOT text with one label per vertex; fully deterministic.
    pub fn to_dot(&self, labels: &[String]) -> String {
        assert_eq!(labels.len(), self.n);
        let mut s = String::from("digraph {\n");
        for v in 0..self.n {
            s.push_str(&format!("  v{} [label=\"{}\"];\n", v, labels[v]));
        }
        for (u, v) in self.arcs() {
            s.push_str(&format!("  v{u} -> v{v};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Parses the DOT subset produced by [`Digraph::to_dot`].
    pub fn from_dot(text: &str) -> Result<(Digraph, Vec<String>), DigraphError> {
        let mut labels = Vec::new();
        let mut arcs = Vec::new();
        for line in text.lines() {
            let line = line.trim().trim_end_matches(';');
            if line.is_empty() || line.starts_with("digraph") || line == "}" {
                continue;
            }
            if let Some((from, to)) = line.split_once("->") {
                let parse = |s: &str| {
                    s.trim()
                        .strip_prefix('v')
                        .and_then(|t| t.parse::<u32>().ok())
                        .ok_or_else(|| DigraphError::BadDot(line.to_string()))
                };
                arcs.push((parse(from)?, parse(to)?));
            } else if let Some((node, attr)) = line.split_once('[') {
                let v: usize = node
                    .trim()
                    .strip_prefix('v')
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| DigraphError::BadDot(line.to_string()))?;
                let label = attr
                    .split('"')
                    .nth(1)
                    .ok_or_else(|| DigraphError::BadDot(line.to_string()))?;
                if v != labels.len() {
                    return Err(DigraphError::BadDot("nodes out of order".into()));
                }
                labels.push(label.to_string());
            } else {
                return Err(DigraphError::BadDot(line.to_string()));
            }
        }
        Ok((Digraph::from_arcs(labels.len(), &arcs)?, labels))
    }
}

/// Vertices lying on at least one of the given 3-cycles.
pub fn cycle_support(n: usize, cycles: &[[u32; 3]]) -> VertexSet {
    VertexSet::from_vertices(n, cycles.iter().flatten().copied())
}

/// The cycles among `cycles` meeting the set `s`.
pub fn cycles_through(cycles: &[[u32; 3]], s: &VertexSet) -> Vec<[u32; 3]> {
    cycles
        .iter()
        .filter(|c| c.iter().any(|&v| s.contains(v)))
        .copied()
        .collect()
}

/// Vertices of the given cycles together with all their neighbors.
pub fn closed_neighborhood(g: &Digraph, cycles: &[[u32; 3]]) -> VertexSet {
    let mut out = VertexSet::empty(g.vertex_count());
    for c in cycles {
        for &v in c {
            out.insert(v);
            for &w in g.out_list(v).iter().chain(g.in_list(v)) {
                out.insert(w);
            }
        }
    }
    out
}

/// Serialization schema for digraphs: `{n, arcs: [[u, v], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct DigraphJson {
    pub n: usize,
    pub arcs: Vec<(u32, u32)>,
}

impl From<&Digraph> for DigraphJson {
    fn from(g: &Digraph) -> Self {
        DigraphJson { n: g.vertex_count(), arcs: g.arcs().collect() }
    }
}

impl TryFrom<DigraphJson> for Digraph {
    type Error = DigraphError;
    fn try_from(j: DigraphJson) -> Result<Self, Self::Error> {
        Digraph::from_arcs(j.n, &j.arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        let arcs: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Digraph::from_arcs(n, &arcs).unwrap()
    }

    #[test]
    fn neighbors_and_degrees() {
        let c3 = cycle(3);
        for v in 0..3 {
            assert_eq!(c3.out_neighbors(v).len(), 1);
            assert_eq!(c3.in_neighbors(v).len(), 1);
        }
        let edgeless = Digraph::from_arcs(4, &[]).unwrap();
        assert!(edgeless.out_neighbors(2).is_empty());
        assert!(Digraph::from_arcs(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn arc_counts() {
        let c3 = cycle(3);
        let all = VertexSet::full(3);
        assert_eq!(c3.arc_count(&all, &all), 3);
        let single = VertexSet::from_vertices(3, [1]);
        assert_eq!(c3.arc_count(&single, &single), 0);
    }

    #[test]
    fn induced_subgraphs() {
        let c4 = cycle(4);
        let (whole, map) = c4.induced(&VertexSet::full(4)).unwrap();
        assert_eq!(whole, c4);
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert!(c4.induced(&VertexSet::empty(4)).is_err());
        let (sub, _) = c4.induced(&VertexSet::from_vertices(4, [0, 1])).unwrap();
        assert_eq!(sub.arc_count_total(), 1);
    }

    #[test]
    fn orientedness_and_regularity() {
        assert!(!Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap().is_oriented());
        assert!(cycle(5).is_oriented());
        assert_eq!(cycle(5).is_regular(), Some(1));
        let star = Digraph::from_arcs(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(star.is_regular(), None);
    }

    #[test]
    fn three_cycles() {
        assert_eq!(cycle(3).oriented_3cycles(), vec![[0, 1, 2]]);
        assert!(cycle(4).oriented_3cycles().is_empty());
    }

    #[test]
    fn three_cycles_match_brute_force_on_random_digraphs() {
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in 2..=7usize {
            for _ in 0..40 {
                let mut arcs = Vec::new();
                for u in 0..n as u32 {
                    for v in 0..n as u32 {
                        if u != v && next() % 3 == 0 {
                            arcs.push((u, v));
                        }
                    }
                }
                let g = Digraph::from_arcs(n, &arcs).unwrap();
                let mut brute = Vec::new();
                for u in 0..n as u32 {
                    for v in 0..n as u32 {
                        for w in 0..n as u32 {
                            if u < v
                                && u < w
                                && v != w
                                && g.has_arc(u, v)
                                && g.has_arc(v, w)
                                && g.has_arc(w, u)
                            {
                                brute.push([u, v, w]);
                            }
                        }
                    }
                }
                assert_eq!(g.oriented_3cycles(), brute);
            }
        }
    }

    #[test]
    fn connectivity() {
        assert!(cycle(6).is_connected_underlying());
        let two_arcs = Digraph::from_arcs(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_arcs.is_connected_underlying());
    }

    #[test]
    fn dot_roundtrip() {
        let one = Digraph::from_arcs(1, &[]).unwrap();
        let text = one.to_dot(&["1_0".into()]);
        assert_eq!(text.lines().count(), 3);
        let path = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        let labels: Vec<String> = (0..3).map(|i| format!("1_{i}")).collect();
        let dot = path.to_dot(&labels);
        assert_eq!(dot.matches("->").count(), 2);
        let (parsed, parsed_labels) = Digraph::from_dot(&dot).unwrap();
        assert_eq!(parsed, path);
        assert_eq!(parsed_labels, labels);
    }
}
