//! Digraph automorphism groups by individualization-refinement, plus the
//! oriented semiregular representation check built on top of them.
//!
//! The refinement signature of a vertex is its current color together with
//! the multisets of out- and in-neighbor colors; new color ids are assigned
//! by sorting signatures, so the partition sequence is label-independent.
//! Backtracking individualizes the least vertex in the first smallest
//! non-singleton cell. Discovered automorphisms prune sibling branches via
//! the orbits of the subgroup fixing the current prefix pointwise. The
//! output is deterministic for a fixed input.

use crate::digraph::Digraph;
use crate::group::{ElemSet, FiniteGroup};
use crate::mcayley::{build, ConnectionSets, McayleyError};
use crate::perm::{Perm, PermGroup};
use serde::Serialize;
use std::collections::BTreeMap;

/// Verdict of the representation check.
#[derive(Clone, Debug, Serialize)]
pub struct OmsrVerdict {
    pub is_omsr: bool,
    pub oriented: bool,
    pub valency: Option<usize>,
    pub aut_order: u128,
    pub orbit_count: usize,
    /// A generator outside the right-translation group, when one exists.
    pub witness: Option<Perm>,
}

/// Computes the full automorphism group of a digraph.
pub fn automorphism_group(g: &Digraph) -> PermGroup {
    let mut search = AutSearch {
        g,
        first_leaf: None,
        gens: Vec::new(),
        prefix: Vec::new(),
    };
    let init = stable_coloring(g, vec![0; g.vertex_count()]);
    search.explore(init);
    PermGroup::from_generators(g.vertex_count(), search.gens)
}

fn stable_coloring(g: &Digraph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.vertex_count();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut outc: Vec<u32> =
                g.out_list(v as u32).iter().map(|&w| colors[w as usize]).collect();
            let mut inc: Vec<u32> =
                g.in_list(v as u32).iter().map(|&w| colors[w as usize]).collect();
            outc.sort_unstable();
            inc.sort_unstable();
            sigs.push((colors[v], outc, inc));
        }
        let mut sorted: Vec<&(u32, Vec<u32>, Vec<u32>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let ids: BTreeMap<&(u32, Vec<u32>, Vec<u32>), u32> = sorted
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        let new_colors: Vec<u32> = sigs.iter().map(|s| ids[s]).collect();
        let old_count = count_colors(&colors);
        let new_count = ids.len();
        let stable = new_count == old_count;
        colors = new_colors;
        if stable {
            return colors;
        }
    }
}

fn count_colors(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

struct AutSearch<'a> {
    g: &'a Digraph,
    first_leaf: Option<Vec<u32>>,
    gens: Vec<Perm>,
    prefix: Vec<u32>,
}

impl AutSearch<'_> {
    fn explore(&mut self, colors: Vec<u32>) {
        let n = self.g.vertex_count();
        // Find the first smallest non-singleton cell.
        let mut cell_sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colors {
            *cell_sizes.entry(c).or_insert(0) += 1;
        }
        let target = cell_sizes
            .iter()
            .filter(|(_, &size)| size > 1)
            .min_by_key(|(&c, &size)| (size, c))
            .map(|(&c, _)| c);

        let Some(target) = target else {
            // Discrete coloring: one vertex per color.
            let mut order = vec![0u32; n];
            for (v, &c) in colors.iter().enumerate() {
                order[c as usize] = v as u32;
            }
            match &self.first_leaf {
                None => self.first_leaf = Some(order),
                Some(first) => {
                    let mut images = vec![0u32; n];
                    for r in 0..n {
                        images[first[r] as usize] = order[r];
                    }
                    if let Some(p) = Perm::from_images(images) {
                        if !p.is_identity() && is_automorphism(self.g, &p) {
                            self.gens.push(p);
                        }
                    }
                }
            }
            return;
        };

        let candidates: Vec<u32> = (0..n as u32).filter(|&v| colors[v as usize] == target).collect();
        let mut explored: Vec<u32> = Vec::new();
        let mut orbit_reps = OrbitTracker::new(n);
        let mut gens_seen = usize::MAX;
        for &v in &candidates {
            if !explored.is_empty() {
                if gens_seen != self.gens.len() {
                    orbit_reps.rebuild(n, &self.gens, &self.prefix);
                    gens_seen = self.gens.len();
                }
                if explored.iter().any(|&u| orbit_reps.same(u, v)) {
                    continue;
                }
            }
            let mut child: Vec<u32> = colors.iter().map(|&c| c * 2).collect();
            for u in 0..n {
                if colors[u] == target && u as u32 != v {
                    child[u] += 1;
                }
            }
            let child = stable_coloring(self.g, child);
            self.prefix.push(v);
            self.explore(child);
            self.prefix.pop();
            explored.push(v);
        }
    }
}

/// Union-find over vertices for the orbits of the generators that fix a
/// prefix of vertices pointwise.
struct OrbitTracker {
    parent: Vec<u32>,
}

impl OrbitTracker {
    fn new(n: usize) -> Self {
        OrbitTracker { parent: (0..n as u32).collect() }
    }

    fn rebuild(&mut self, n: usize, gens: &[Perm], prefix: &[u32]) {
        self.parent = (0..n as u32).collect();
        for p in gens {
            if prefix.iter().all(|&u| p.apply(u as usize) == u as usize) {
                for v in 0..n {
                    self.union(v as u32, p.apply(v) as u32);
                }
            }
        }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut v = v;
        while self.parent[v as usize] != v {
            let up = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = up;
            v = up;
        }
        v
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    fn same(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }
}

fn is_automorphism(g: &Digraph, p: &Perm) -> bool {
    g.arcs()
        .all(|(u, v)| g.has_arc(p.apply(u as usize) as u32, p.apply(v as usize) as u32))
}

/// Exhaustive oracle: every permutation of the vertices, checked directly.
/// Only sensible for very small digraphs.
pub fn brute_force_automorphisms(g: &Digraph) -> Vec<Perm> {
    let n = g.vertex_count();
    assert!(n <= 8, "brute force oracle is for tiny digraphs");
    let mut out = Vec::new();
    let mut images: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(g: &Digraph, images: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        let n = g.vertex_count();
        if images.len() == n {
            let p = Perm::from_images(images.clone()).unwrap();
            if is_automorphism(g, &p) {
                out.push(p);
            }
            return;
        }
        for v in 0..n as u32 {
            if !used[v as usize] {
                used[v as usize] = true;
                images.push(v);
                rec(g, images, used, out);
                images.pop();
                used[v as usize] = false;
            }
        }
    }
    rec(g, &mut images, &mut used, &mut out);
    out
}

pub fn is_vertex_transitive(g: &Digraph) -> bool {
    automorphism_group(g).is_transitive()
}

/// Decides whether the connection sets define an oriented m-semiregular
/// representation: oriented, regular, and the full automorphism group is
/// exactly the right-translation copy of the group (order comparison
/// suffices since right translations are always automorphisms).
pub fn check_omsr(g: &FiniteGroup, t: &ConnectionSets) -> Result<OmsrVerdict, McayleyError> {
    let report = t.validate(g);
    let built = build(g, t)?;
    let aut = automorphism_group(&built.digraph);
    let aut_order = aut.order();
    let valency = built.digraph.is_regular();
    let is_omsr = report.oriented && valency.is_some() && aut_order == g.order() as u128;
    let witness = if !is_omsr && aut_order > g.order() as u128 {
        aut.generators()
            .iter()
            .find(|p| !is_right_translation(g, &built, p))
            .cloned()
    } else {
        None
    };
    Ok(OmsrVerdict {
        is_omsr,
        oriented: report.oriented,
        valency,
        aut_order,
        orbit_count: aut.orbits().len(),
        witness,
    })
}

fn is_right_translation(
    g: &FiniteGroup,
    built: &crate::mcayley::MCayleyDigraph,
    p: &Perm,
) -> bool {
    let image_of_id = p.apply(built.vertex(g.identity(), 0) as usize) as u32;
    if built.part_of(image_of_id) != 0 {
        return false;
    }
    let a = built.elem_of(image_of_id);
    *p == built.right_action(g, a)
}

/// Evaluates both sides of the Haar-type equivalence: a permutation of the
/// group lies in `Aut(Cay(G,S)) ∩ Aut(Cay(G,T))` exactly when its doubled
/// copy on `G_0 ∪ G_1` is an automorphism of `BiCay(G, ∅, ∅, S, T)`.
/// Returns the two sides, each computed independently.
pub fn haar_equivalence(
    g: &FiniteGroup,
    s: &ElemSet,
    t: &ElemSet,
    sigma: &Perm,
) -> (bool, bool) {
    assert_eq!(sigma.degree(), g.order());
    let lhs = cayley_preserved(g, s, sigma) && cayley_preserved(g, t, sigma);
    let bicay = build(
        g,
        &ConnectionSets::bicay(ElemSet::empty(), ElemSet::empty(), *s, *t),
    )
    .expect("empty diagonals cannot loop");
    let doubled: Vec<u32> = (0..2 * g.order())
        .map(|v| {
            let part = v / g.order();
            (part * g.order() + sigma.apply(v % g.order())) as u32
        })
        .collect();
    let doubled = Perm::from_images(doubled).expect("doubling a bijection");
    let rhs = is_automorphism(&bicay.digraph, &doubled)
        && is_automorphism(&bicay.digraph, &doubled.inverse());
    (lhs, rhs)
}

/// Direct evaluation of `sigma in Aut(Cay(G, S))`. Identity elements of `S`
/// would contribute a loop at every vertex, which no permutation can break,
/// so they are ignored.
fn cayley_preserved(g: &FiniteGroup, s: &ElemSet, sigma: &Perm) -> bool {
    use crate::group::Elem;
    for x in g.elements() {
        for t in s.iter() {
            if t == g.identity() {
                continue;
            }
            // Arc (x, t*x) must map to an arc: sigma(t*x) in S * sigma(x).
            let from = Elem(sigma.apply(x.idx()) as u16);
            let to = Elem(sigma.apply(g.mul(t, x).idx()) as u16);
            let shift = g.mul(to, g.inv(from));
            if !s.contains(shift) || shift == g.identity() {
                return false;
            }
        }
    }
    true
}
