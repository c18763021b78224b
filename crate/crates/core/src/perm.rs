//! Permutations and permutation groups backed by a stabilizer chain.
//!
//! A [`PermGroup`] is given by a generator list; a deterministic
//! Schreier–Sims construction provides exact order and membership
//! queries without enumerating the group.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A permutation of `0..n`, stored as its image array; serialized as the
/// bare array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(deserializer)?;
        Perm::from_images(images)
            .ok_or_else(|| serde::de::Error::custom("not a permutation image array"))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from its image array; `None` if not a bijection.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v as usize >= n || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` followed by `other`: `(self.then(other))(x) = other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&v| other.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Perm { images }
    }

}

fn first_moved(p: &Perm) -> Option<usize> {
    p.images().iter().enumerate().find(|(i, &v)| *i as u32 != v).map(|(i, _)| i)
}

/// One level of the stabilizer chain: a base point, the generators of the
/// current stabilizer, and a transversal of the base point's orbit.
#[derive(Clone, Debug)]
struct ChainLevel {
    beta: usize,
    gens: Vec<Perm>,
    /// `transversal[p]` maps `beta` to `p` for every `p` in the orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl ChainLevel {
    fn new(degree: usize, beta: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[beta] = Some(Perm::identity(degree));
        ChainLevel {
            beta,
            gens: Vec::new(),
            transversal,
            orbit: vec![beta],
        }
    }

    /// Recomputes the orbit/transversal by breadth-first closure.
    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.beta] = Some(Perm::identity(degree));
        self.orbit = vec![self.beta];
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    let t = self.transversal[p].as_ref().unwrap().then(g);
                    self.transversal[q] = Some(t);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A permutation group with a stabilizer chain for order and membership.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: Vec<ChainLevel>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: Vec::new(),
        }
    }

    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Self {
        let mut group = PermGroup::trivial(degree);
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            group.extend(g);
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators that were actually needed to build the chain.
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Adds a permutation to the group if it is not already a member.
    /// Returns true when the group grew.
    pub fn extend(&mut self, p: Perm) -> bool {
        if self.contains(&p) {
            return false;
        }
        self.gens.push(p.clone());
        self.insert_at(0, p);
        true
    }

    fn insert_at(&mut self, level: usize, p: Perm) {
        if p.is_identity() {
            return;
        }
        if level == self.chain.len() {
            let beta = first_moved(&p).expect("non-identity moves a point");
            self.chain.push(ChainLevel::new(self.degree, beta));
        }
        self.chain[level].gens.push(p);
        self.chain[level].rebuild(self.degree);
        // Close the level under Schreier generators.
        let orbit = self.chain[level].orbit.clone();
        for &point in &orbit {
            for gi in 0..self.chain[level].gens.len() {
                let g = self.chain[level].gens[gi].clone();
                let t_p = self.chain[level].transversal[point].clone().unwrap();
                let q = g.apply(point);
                let t_q = self.chain[level].transversal[q].clone().unwrap();
                let schreier = t_p.then(&g).then(&t_q.inverse());
                if let Some(residue) = self.sift_from(level + 1, schreier) {
                    self.insert_at(level + 1, residue);
                }
            }
        }
    }

    /// Sifts `p` through chain levels starting at `from`; returns the
    /// non-identity residue if `p` is not in the subgroup at that level.
    fn sift_from(&self, from: usize, p: Perm) -> Option<Perm> {
        let mut cur = p;
        for level in &self.chain[from..] {
            let image = cur.apply(level.beta);
            match &level.transversal[image] {
                Some(t) => cur = cur.then(&t.inverse()),
                None => return Some(cur),
            }
        }
        if cur.is_identity() {
            None
        } else {
            Some(cur)
        }
    }

    pub fn contains(&self, p: &Perm) -> bool {
        assert_eq!(p.degree(), self.degree);
        self.sift_from(0, p.clone()).is_none()
    }

    pub fn order(&self) -> u128 {
        self.chain.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Orbit of a point under the whole group.
    pub fn orbit_of(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[v] = true;
        let mut orbit = vec![v];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbit partition, each orbit sorted, orbits ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for v in 0..self.degree {
            if !seen[v] {
                let orbit = self.orbit_of(v);
                for &p in &orbit {
                    seen[p] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    /// A group is semiregular when every point stabilizer is trivial,
    /// equivalently when every orbit has full group size.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits().iter().all(|o| o.len() as u128 == order)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of(0).len() == self.degree
    }

    /// Order of the stabilizer of `v`, by orbit-stabilizer.
    pub fn point_stabilizer_order(&self, v: usize) -> u128 {
        self.order() / self.orbit_of(v).len() as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u32]) -> Perm {
        Perm::from_images(images.to_vec()).unwrap()
    }

    /// Oracle: full closure of a generator set by repeated products.
    fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
        let mut elems = vec![Perm::identity(degree)];
        let mut head = 0;
        while head < elems.len() {
            let p = elems[head].clone();
            head += 1;
            for g in gens {
                let q = p.then(g);
                if !elems.contains(&q) {
                    elems.push(q);
                }
            }
        }
        elems
    }

    #[test]
    fn compose_and_invert() {
        let a = perm(&[1, 2, 0, 3]);
        let b = perm(&[0, 1, 3, 2]);
        assert_eq!(a.then(&b).apply(1), 3);
        assert!(a.then(&a.inverse()).is_identity());
        assert!(Perm::from_images(vec![0, 0, 1]).is_none());
    }

    #[test]
    fn identity_only_group_has_order_one() {
        let g = PermGroup::from_generators(5, vec![Perm::identity(5)]);
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbits().len(), 5);
    }

    #[test]
    fn symmetric_group_on_four_points() {
        let g = PermGroup::from_generators(4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]);
        assert_eq!(g.order(), 24);
        assert!(g.is_transitive());
        assert!(!g.is_semiregular());
        assert_eq!(g.point_stabilizer_order(0), 6);
        assert!(g.contains(&perm(&[3, 2, 1, 0])));
    }

    #[test]
    fn cyclic_rotation_group_is_regular() {
        let rot = perm(&[1, 2, 3, 4, 0]);
        let g = PermGroup::from_generators(5, vec![rot]);
        assert_eq!(g.order(), 5);
        assert!(g.is_semiregular());
        assert!(g.is_transitive());
        assert_eq!(g.point_stabilizer_order(2), 1);
        assert!(!g.contains(&perm(&[1, 0, 2, 3, 4])));
    }

    #[test]
    fn chain_order_matches_closure_enumeration_small_degrees() {
        // Every group here has degree <= 8; compare chain order against
        // the explicit element closure.
        let cases: Vec<(usize, Vec<Perm>)> = vec![
            (3, vec![perm(&[1, 2, 0])]),
            (4, vec![perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]),
            (6, vec![perm(&[1, 2, 3, 4, 5, 0]), perm(&[0, 5, 4, 3, 2, 1])]),
            (7, vec![perm(&[1, 2, 3, 4, 5, 6, 0])]),
            (8, vec![perm(&[1, 0, 2, 3, 4, 5, 6, 7]), perm(&[0, 2, 1, 3, 4, 5, 6, 7]), perm(&[0, 1, 2, 3, 5, 4, 7, 6])]),
        ];
        for (degree, gens) in cases {
            let group = PermGroup::from_generators(degree, gens.clone());
            let elems = closure(degree, &gens);
            assert_eq!(group.order(), elems.len() as u128);
            for e in &elems {
                assert!(group.contains(e));
            }
        }
    }
}
