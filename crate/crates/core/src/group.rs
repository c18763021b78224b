//! Finite groups as explicit multiplication tables.
//!
//! Every group is stored densely: elements are indices `0..order` with the
//! identity at index 0, products come from a flat `order * order` table, and
//! named generators map symbolic labels (`x`, `y`, `z`, `w`, `u`, `b`, or
//! `x1..xn`) to element indices. Groups are built by a handful of
//! constructors (cyclic, elementary abelian 2-groups, direct products,
//! generalized dihedral doubles, the quaternion group, a bounded coset
//! enumeration for presented groups, and the central product of two
//! dihedral groups of order 8) and are immutable afterwards.

use crate::perm::{Perm, PermGroup};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Hard cap on group order. The set-triple identities are checked up to
/// rank-8 elementary abelian groups (order 256); element sets are stored
/// as 256-bit masks.
pub const MAX_ORDER: usize = 256;

/// Default order bound for brute-force automorphism enumeration.
pub const DEFAULT_AUT_BOUND: usize = 32;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("generalized dihedral base group must be abelian")]
    NotAbelian,
    #[error("coset enumeration exceeded {0} cosets (wrong presentation or bound too small)")]
    EnumerationOverflow(usize),
    #[error("presented group has order {found}, above the stated bound {bound}")]
    OrderBoundExceeded { found: usize, bound: usize },
    #[error("group order {order} exceeds the automorphism enumeration bound {bound}")]
    AutBoundExceeded { order: usize, bound: usize },
    #[error("bad word {0:?}: {1}")]
    BadWord(String, String),
}

/// Index of a group element relative to a specific [`FiniteGroup`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A subset of a group's elements, bit-set semantics over indices.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElemSet {
    bits: [u128; 2],
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

impl ElemSet {
    pub fn empty() -> Self {
        ElemSet { bits: [0; 2] }
    }

    pub fn singleton(e: Elem) -> Self {
        let mut s = ElemSet::empty();
        s.insert(e);
        s
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(elems: I) -> Self {
        let mut s = ElemSet::empty();
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, e: Elem) {
        debug_assert!(e.idx() < MAX_ORDER);
        self.bits[e.idx() / 128] |= 1u128 << (e.idx() % 128);
    }

    pub fn remove(&mut self, e: Elem) {
        self.bits[e.idx() / 128] &= !(1u128 << (e.idx() % 128));
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.bits[e.idx() / 128] >> (e.idx() % 128) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == [0; 2]
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        ElemSet { bits: [self.bits[0] | other.bits[0], self.bits[1] | other.bits[1]] }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet { bits: [self.bits[0] & other.bits[0], self.bits[1] & other.bits[1]] }
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.bits[0] & other.bits[0] == 0 && self.bits[1] & other.bits[1] == 0
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits[0] & !other.bits[0] == 0 && self.bits[1] & !other.bits[1] == 0
    }

    /// Ascending iteration over member indices.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        let bits = self.bits;
        (0..MAX_ORDER as u16).filter(move |i| bits[*i as usize / 128] >> (i % 128) & 1 == 1).map(Elem)
    }
}

/// A group presentation: named generators and relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// Each relator is a reduced letter sequence `(generator, inverted)`.
    pub relators: Vec<Vec<(usize, bool)>>,
}

impl Presentation {
    /// Parses relators like `"x^4"`, `"(xy^-1)^2"`, `"x^2y^-2"` over the
    /// declared generator names.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, GroupError> {
        let generators: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let relators = relators
            .iter()
            .map(|r| parse_word(&generators, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation { generators, relators })
    }
}

/// Parses a word over `symbols` into a flat signed-letter sequence.
///
/// Grammar: a word is a sequence of items; an item is `1`, a symbol with an
/// optional `^<int>` power, or a parenthesised word with an optional power.
/// `*` and whitespace are ignored separators. Symbols are matched greedily
/// (longest name first), so `x12` prefers a generator named `x12` over `x1`.
pub fn parse_word(symbols: &[String], input: &str) -> Result<Vec<(usize, bool)>, GroupError> {
    let mut order: Vec<usize> = (0..symbols.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(symbols[i].len()));
    let bytes: Vec<char> = input.chars().collect();
    let mut pos = 0usize;
    let word = parse_seq(symbols, &order, &bytes, &mut pos, input, 0)?;
    if pos != bytes.len() {
        return Err(GroupError::BadWord(
            input.to_string(),
            format!("unexpected character at position {pos}"),
        ));
    }
    Ok(word)
}

fn parse_seq(
    symbols: &[String],
    order: &[usize],
    chars: &[char],
    pos: &mut usize,
    input: &str,
    depth: usize,
) -> Result<Vec<(usize, bool)>, GroupError> {
    let mut out = Vec::new();
    loop {
        while *pos < chars.len() && (chars[*pos] == '*' || chars[*pos].is_whitespace()) {
            *pos += 1;
        }
        if *pos >= chars.len() {
            break;
        }
        let c = chars[*pos];
        if c == ')' {
            if depth == 0 {
                return Err(GroupError::BadWord(input.to_string(), "unmatched ')'".into()));
            }
            break;
        }
        let base: Vec<(usize, bool)> = if c == '(' {
            *pos += 1;
            let inner = parse_seq(symbols, order, chars, pos, input, depth + 1)?;
            if *pos >= chars.len() || chars[*pos] != ')' {
                return Err(GroupError::BadWord(input.to_string(), "missing ')'".into()));
            }
            *pos += 1;
            inner
        } else if c == '1' {
            *pos += 1;
            Vec::new()
        } else {
            let rest: String = chars[*pos..].iter().collect();
            let mut matched = None;
            for &i in order {
                if !symbols[i].is_empty() && rest.starts_with(&symbols[i]) {
                    matched = Some(i);
                    break;
                }
            }
            let Some(i) = matched else {
                return Err(GroupError::BadWord(
                    input.to_string(),
                    format!("no generator matches at position {pos}"),
                ));
            };
            *pos += symbols[i].chars().count();
            vec![(i, false)]
        };
        // Optional power.
        let mut exp: i64 = 1;
        if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            let mut neg = false;
            if *pos < chars.len() && chars[*pos] == '-' {
                neg = true;
                *pos += 1;
            }
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return Err(GroupError::BadWord(input.to_string(), "missing exponent".into()));
            }
            let digits: String = chars[start..*pos].iter().collect();
            exp = digits.parse::<i64>().map_err(|e| {
                GroupError::BadWord(input.to_string(), e.to_string())
            })?;
            if neg {
                exp = -exp;
            }
        }
        let (seq, times): (Vec<(usize, bool)>, u64) = if exp >= 0 {
            (base, exp as u64)
        } else {
            let inv: Vec<(usize, bool)> =
                base.iter().rev().map(|&(g, s)| (g, !s)).collect();
            (inv, (-exp) as u64)
        };
        for _ in 0..times {
            out.extend(seq.iter().copied());
        }
    }
    Ok(out)
}

/// A finite group on indices `0..order` with identity 0.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    labels: Vec<(String, Elem)>,
    names: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, gens {:?})", self.order, self.labels)
    }
}

impl FiniteGroup {
    /// Validates and wraps a raw multiplication table. The identity must sit
    /// at index 0 and the labelled generators must generate the whole group.
    pub fn from_table(
        mul: Vec<u16>,
        labels: Vec<(String, Elem)>,
    ) -> Result<Self, GroupError> {
        let order = (mul.len() as f64).sqrt().round() as usize;
        if order * order != mul.len() || order == 0 {
            return Err(GroupError::NotAGroup("table is not square".into()));
        }
        if order > MAX_ORDER {
            return Err(GroupError::OrderTooLarge(order));
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for a in 0..order {
            for b in 0..order {
                if at(a, b) >= order {
                    return Err(GroupError::NotAGroup("entry out of range".into()));
                }
            }
        }
        // Two-sided identity at index 0.
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::NotAGroup("index 0 is not the identity".into()));
            }
        }
        // Latin square gives cancellation; with associativity this yields inverses.
        for a in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for b in 0..order {
                row[at(a, b)] = true;
                col[at(b, a)] = true;
            }
            if row.iter().any(|v| !v) || col.iter().any(|v| !v) {
                return Err(GroupError::NotAGroup(format!("row/column {a} is not a bijection")));
            }
        }
        // Exhaustive associativity (order is small by construction).
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![0u16; order];
        for a in 0..order {
            let mut found = None;
            for b in 0..order {
                if at(a, b) == 0 {
                    found = Some(b);
                    break;
                }
            }
            let b = found.ok_or_else(|| GroupError::NotAGroup(format!("no inverse for {a}")))?;
            if at(b, a) != 0 {
                return Err(GroupError::NotAGroup(format!("inverse of {a} is one-sided")));
            }
            inv[a] = b as u16;
        }
        for (name, e) in &labels {
            if e.idx() >= order {
                return Err(GroupError::NotAGroup(format!("label {name} out of range")));
            }
        }
        let mut g = FiniteGroup {
            order,
            mul,
            inv,
            labels,
            names: Vec::new(),
        };
        // Generators must generate.
        let gen_elems: Vec<Elem> = g.labels.iter().map(|(_, e)| *e).collect();
        let closure = g.subgroup_closure(&gen_elems);
        if closure.len() != order {
            return Err(GroupError::NotAGroup(
                "labelled generators do not generate the group".into(),
            ));
        }
        g.names = g.shortest_words();
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.idx() * self.order + b.idx()])
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inv[a.idx()])
    }

    pub fn conj(&self, a: Elem, by: Elem) -> Elem {
        self.mul(self.mul(self.inv(by), a), by)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order as u16).map(Elem)
    }

    pub fn all_elements_set(&self) -> ElemSet {
        ElemSet::from_elems(self.elements())
    }

    pub fn labels(&self) -> &[(String, Elem)] {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<Elem> {
        self.labels.iter().find(|(n, _)| n == name).map(|(_, e)| *e)
    }

    /// Word string naming an element (shortest word in the generators).
    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.idx()]
    }

    /// Rebinds generator labels (display names are regenerated). The new
    /// label set must still generate the group.
    pub fn relabel(self, labels: Vec<(String, Elem)>) -> Result<Self, GroupError> {
        FiniteGroup::from_table(self.mul, labels)
    }

    /// Least `k >= 1` with `g^k = 1`.
    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut cur = g;
        while cur != self.identity() {
            cur = self.mul(cur, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|e| self.element_order(e)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        for a in self.elements() {
            for b in self.elements() {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// `{a * b | a in A, b in B}`.
    pub fn set_product(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty();
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// `{a^-1 | a in A}`.
    pub fn set_inverse(&self, a: &ElemSet) -> ElemSet {
        ElemSet::from_elems(a.iter().map(|x| self.inv(x)))
    }

    /// Closure of a set of elements under multiplication.
    pub fn subgroup_closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![self.identity()];
        let mut head = 0;
        while head < out.len() {
            let a = out[head];
            head += 1;
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b.idx()] {
                    seen[b.idx()] = true;
                    out.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Evaluates a parsed letter sequence to an element.
    pub fn eval_letters(&self, letters: &[(usize, bool)], gens: &[Elem]) -> Elem {
        let mut acc = self.identity();
        for &(g, inverted) in letters {
            let e = if inverted { self.inv(gens[g]) } else { gens[g] };
            acc = self.mul(acc, e);
        }
        acc
    }

    /// Resolves a word written in this group's generator labels, e.g.
    /// `"x^-1yzw"` or `"xb"`.
    pub fn element_from_word(&self, word: &str) -> Result<Elem, GroupError> {
        let symbols: Vec<String> = self.labels.iter().map(|(n, _)| n.clone()).collect();
        let gens: Vec<Elem> = self.labels.iter().map(|(_, e)| *e).collect();
        let letters = parse_word(&symbols, word)?;
        Ok(self.eval_letters(&letters, &gens))
    }

    pub fn set_from_words(&self, words: &[&str]) -> Result<ElemSet, GroupError> {
        let mut s = ElemSet::empty();
        for w in words {
            s.insert(self.element_from_word(w)?);
        }
        Ok(s)
    }

    /// Number of elements of each order; a cheap isomorphism invariant.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut stats = BTreeMap::new();
        for e in self.elements() {
            *stats.entry(self.element_order(e)).or_insert(0) += 1;
        }
        stats
    }

    /// Shortest-word display names over the labelled generators, breadth
    /// first, preferring earlier generators and positive letters.
    fn shortest_words(&self) -> Vec<String> {
        #[derive(Clone)]
        struct Letter {
            text: String,
            elem: Elem,
        }
        let mut alphabet = Vec::new();
        for (name, e) in &self.labels {
            alphabet.push(Letter { text: name.clone(), elem: *e });
            if self.inv(*e) != *e {
                alphabet.push(Letter { text: format!("{name}^-1"), elem: self.inv(*e) });
            }
        }
        let mut names: Vec<Option<String>> = vec![None; self.order];
        names[0] = Some("1".to_string());
        let mut queue = vec![Elem(0)];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for l in &alphabet {
                let b = self.mul(a, l.elem);
                if names[b.idx()].is_none() {
                    let prefix = names[a.idx()].as_ref().unwrap();
                    let word = if prefix == "1" { l.text.clone() } else { format!("{prefix}{}", l.text) };
                    names[b.idx()] = Some(word);
                    queue.push(b);
                }
            }
        }
        names
            .into_iter()
            .enumerate()
            .map(|(i, n)| n.unwrap_or_else(|| format!("g{i}")))
            .collect()
    }

    /// All automorphisms as permutations of element indices, enumerated by
    /// backtracking over generator images with incremental consistency
    /// checks. Deterministic order.
    pub fn automorphisms_all_bounded(&self, bound: usize) -> Result<Vec<Perm>, GroupError> {
        if self.order > bound {
            return Err(GroupError::AutBoundExceeded { order: self.order, bound });
        }
        let gens: Vec<Elem> = self.labels.iter().map(|(_, e)| *e).collect();
        let mut out = Vec::new();
        let mut images = vec![0u16; gens.len()];
        self.search_homs(&gens, 0, &mut images, self, &mut |perm| {
            out.push(perm);
            true
        });
        out.sort();
        Ok(out)
    }

    pub fn automorphisms_all(&self) -> Result<Vec<Perm>, GroupError> {
        self.automorphisms_all_bounded(DEFAULT_AUT_BOUND)
    }

    /// The automorphism group with a stabilizer chain.
    pub fn automorphism_group(&self) -> Result<PermGroup, GroupError> {
        let all = self.automorphisms_all()?;
        let mut pg = PermGroup::trivial(self.order);
        for p in all {
            pg.extend(p);
        }
        Ok(pg)
    }

    /// True when the two multiplication tables define isomorphic groups.
    /// Intended for small catalog groups only.
    pub fn isomorphic(&self, other: &FiniteGroup) -> bool {
        if self.order != other.order {
            return false;
        }
        if self.order_statistics() != other.order_statistics() {
            return false;
        }
        if self.is_abelian() != other.is_abelian() {
            return false;
        }
        // Abelian groups of equal order statistics are isomorphic.
        if self.is_abelian() {
            return true;
        }
        let gens: Vec<Elem> = self.labels.iter().map(|(_, e)| *e).collect();
        let mut images = vec![0u16; gens.len()];
        let mut found = false;
        self.search_homs(&gens, 0, &mut images, other, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// Backtracking search for bijective homomorphisms `self -> target`
    /// extending `gens[i] -> images[i]`. `visit` returns false to stop.
    fn search_homs(
        &self,
        gens: &[Elem],
        pos: usize,
        images: &mut Vec<u16>,
        target: &FiniteGroup,
        visit: &mut dyn FnMut(Perm) -> bool,
    ) -> bool {
        if pos == gens.len() {
            if let Some(map) = self.extend_hom(gens, images, target) {
                if map.iter().enumerate().all(|(_, &v)| v != u16::MAX) {
                    let mut seen = vec![false; self.order];
                    let mut bij = true;
                    for &v in &map {
                        if seen[v as usize] {
                            bij = false;
                            break;
                        }
                        seen[v as usize] = true;
                    }
                    if bij {
                        let perm = Perm::from_images(map.iter().map(|&v| v as u32).collect())
                            .expect("bijection checked");
                        return visit(perm);
                    }
                }
            }
            return true;
        }
        let want = self.element_order(gens[pos]);
        for cand in target.elements() {
            if target.element_order(cand) != want {
                continue;
            }
            images[pos] = cand.0;
            // Prune: the partial map on <gens[0..=pos]> must already be
            // consistent and injective.
            if self.extend_hom(&gens[..=pos], &images[..=pos], target).is_some()
                && !self.search_homs(gens, pos + 1, images, target, visit)
            {
                return false;
            }
        }
        true
    }

    /// Extends `gens -> images` multiplicatively over the subgroup the
    /// prefix generates. Returns the (possibly partial) element map, with
    /// `u16::MAX` for elements outside that subgroup, or `None` on conflict
    /// or non-injectivity.
    fn extend_hom(&self, gens: &[Elem], images: &[u16], target: &FiniteGroup) -> Option<Vec<u16>> {
        let mut map = vec![u16::MAX; self.order];
        let mut hit = vec![false; target.order];
        map[0] = 0;
        hit[0] = true;
        let mut queue = vec![Elem(0)];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            let fa = Elem(map[a.idx()]);
            for (i, &g) in gens.iter().enumerate() {
                let b = self.mul(a, g);
                let fb = target.mul(fa, Elem(images[i]));
                if map[b.idx()] == u16::MAX {
                    if hit[fb.idx()] {
                        return None; // not injective
                    }
                    map[b.idx()] = fb.0;
                    hit[fb.idx()] = true;
                    queue.push(b);
                } else if map[b.idx()] != fb.0 {
                    return None; // inconsistent
                }
            }
        }
        Some(map)
    }

    /// Splits the group as a generalized dihedral double: an abelian
    /// index-2 subgroup `H` and an involution `b` with `b h b = h^-1` for
    /// all `h` in `H`. Returns the least such `b` with its subgroup.
    pub fn generalized_dihedral_split(&self) -> Option<(Vec<Elem>, Elem)> {
        if self.order % 2 != 0 || self.order < 2 {
            return None;
        }
        // Index-2 subgroups all contain squares and commutators.
        let mut kgens = Vec::new();
        for a in self.elements() {
            kgens.push(self.mul(a, a));
            for b in self.elements() {
                // a^-1 b^-1 a b
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                kgens.push(c);
            }
        }
        kgens.sort_unstable();
        kgens.dedup();
        let k = self.subgroup_closure(&kgens);
        let quotient_size = self.order / k.len();
        if quotient_size < 2 {
            return None;
        }
        // Assign each element a vector in the elementary abelian quotient.
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<Elem> = Vec::new();
        for e in self.elements() {
            if coset_of[e.idx()] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(e);
            for &h in &k {
                coset_of[self.mul(e, h).idx()] = id;
            }
        }
        // Quotient group on coset ids (elementary abelian 2-group).
        let q = reps.len();
        let qmul = |a: usize, b: usize| coset_of[self.mul(reps[a], reps[b]).idx()];
        // Express each coset id as an F2 vector over a basis.
        let mut vec_of = vec![u32::MAX; q];
        vec_of[coset_of[0]] = 0;
        let mut basis: Vec<usize> = Vec::new();
        for c in 0..q {
            if vec_of[c] == u32::MAX {
                let bit = basis.len();
                basis.push(c);
                // Multiply all known cosets by the new basis coset.
                let known: Vec<usize> = (0..q).filter(|&d| vec_of[d] != u32::MAX).collect();
                for d in known {
                    let e = qmul(d, c);
                    vec_of[e] = vec_of[d] | (1 << bit);
                }
            }
        }
        let rank = basis.len();
        for phi in 1u32..(1 << rank) {
            let h: Vec<Elem> = self
                .elements()
                .filter(|e| (vec_of[coset_of[e.idx()]] & phi).count_ones() % 2 == 0)
                .collect();
            if h.len() * 2 != self.order {
                continue;
            }
            let hset = ElemSet::from_elems(h.iter().copied());
            let abelian = h.iter().all(|&a| h.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
            if !abelian {
                continue;
            }
            for b in self.elements() {
                if hset.contains(b) || self.mul(b, b) != self.identity() {
                    continue;
                }
                if h.iter().all(|&x| self.mul(self.mul(b, x), b) == self.inv(x)) {
                    return Some((h, b));
                }
            }
        }
        None
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// The cyclic group of order `n`, generator `x`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as u16;
        }
    }
    let labels = if n > 1 { vec![("x".to_string(), Elem(1))] } else { Vec::new() };
    FiniteGroup::from_table(mul, labels).expect("cyclic group table")
}

/// The elementary abelian group of order `2^n`. Elements are bitmasks;
/// generators are labelled `x1..xn`, with aliases `x`, `y`, `z`, `w` for
/// `n <= 4` to match the small-case constructions.
pub fn elementary_abelian_2(n: usize) -> FiniteGroup {
    let order = 1usize << n;
    assert!(order <= MAX_ORDER);
    let mut mul = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            mul[a * order + b] = (a ^ b) as u16;
        }
    }
    let mut labels = Vec::new();
    if n <= 4 {
        for (i, name) in ["x", "y", "z", "w"].iter().take(n).enumerate() {
            labels.push((name.to_string(), Elem(1 << i)));
        }
    } else {
        for i in 0..n {
            labels.push((format!("x{}", i + 1), Elem(1 << i)));
        }
    }
    FiniteGroup::from_table(mul, labels).expect("elementary abelian table")
}

/// Componentwise product. Labels from `a` are kept; colliding labels from
/// `b` get trailing primes.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = a.order() * b.order();
    if order > MAX_ORDER {
        return Err(GroupError::OrderTooLarge(order));
    }
    let nb = b.order();
    let idx = |x: Elem, y: Elem| (x.idx() * nb + y.idx()) as u16;
    let mut mul = vec![0u16; order * order];
    for x1 in a.elements() {
        for y1 in b.elements() {
            for x2 in a.elements() {
                for y2 in b.elements() {
                    let p = idx(x1, y1) as usize;
                    let q = idx(x2, y2) as usize;
                    mul[p * order + q] = idx(a.mul(x1, x2), b.mul(y1, y2));
                }
            }
        }
    }
    let mut labels: Vec<(String, Elem)> = a
        .labels()
        .iter()
        .map(|(n, e)| (n.clone(), Elem(idx(*e, Elem(0)))))
        .collect();
    for (n, e) in b.labels() {
        let mut name = n.clone();
        while labels.iter().any(|(m, _)| *m == name) {
            name.push('\'');
        }
        labels.push((name, Elem(idx(Elem(0), *e))));
    }
    FiniteGroup::from_table(mul, labels)
}

/// The generalized dihedral group over an abelian `h`: indices
/// `0..|H|` are `H` itself, `|H|..2|H|` are the coset `Hb`, and the
/// distinguished involution `b` (label `b`) inverts `H` by conjugation.
pub fn generalized_dihedral(h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    if !h.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let nh = h.order();
    let order = 2 * nh;
    if order > MAX_ORDER {
        return Err(GroupError::OrderTooLarge(order));
    }
    // Element eps*|H| + x represents x * b^eps.
    let mut mul = vec![0u16; order * order];
    for e1 in 0..2usize {
        for x1 in h.elements() {
            for e2 in 0..2usize {
                for x2 in h.elements() {
                    let left = e1 * nh + x1.idx();
                    let right = e2 * nh + x2.idx();
                    let y = if e1 == 0 { x2 } else { h.inv(x2) };
                    let prod = ((e1 + e2) % 2) * nh + h.mul(x1, y).idx();
                    mul[left * order + right] = prod as u16;
                }
            }
        }
    }
    let mut labels: Vec<(String, Elem)> = h.labels().to_vec();
    labels.push(("b".to_string(), Elem(nh as u16)));
    FiniteGroup::from_table(mul, labels)
}

/// The quaternion group of order 8: `x^4 = y^4 = 1`, `x^2 = y^2`,
/// `x^y = x^-1`. Elements are `x^i y^j` with `i < 4`, `j < 2`.
pub fn quaternion() -> FiniteGroup {
    let order = 8;
    let idx = |i: usize, j: usize| (i % 4) + 4 * (j % 2);
    let mut mul = vec![0u16; order * order];
    for i1 in 0..4 {
        for j1 in 0..2 {
            for i2 in 0..4 {
                for j2 in 0..2 {
                    // y x^k = x^-k y, and y*y = x^2.
                    let i = (i1 + if j1 == 0 { i2 } else { 4 - i2 } + if j1 == 1 && j2 == 1 { 2 } else { 0 }) % 4;
                    let j = (j1 + j2) % 2;
                    mul[idx(i1, j1) * order + idx(i2, j2)] = idx(i, j) as u16;
                }
            }
        }
    }
    let labels = vec![("x".to_string(), Elem(1)), ("y".to_string(), Elem(4))];
    FiniteGroup::from_table(mul, labels).expect("quaternion table")
}

/// Quotient of `g` by the central subgroup `{1, n}` for a central
/// involution `n`. Representatives are the smaller index of each coset.
pub fn quotient_by_central_involution(
    g: &FiniteGroup,
    n: Elem,
) -> Result<FiniteGroup, GroupError> {
    assert!(g.element_order(n) == 2, "not an involution");
    assert!(
        g.elements().all(|a| g.mul(a, n) == g.mul(n, a)),
        "element is not central"
    );
    let mut rep_of = vec![u16::MAX; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if rep_of[a.idx()] != u16::MAX {
            continue;
        }
        let id = reps.len() as u16;
        rep_of[a.idx()] = id;
        rep_of[g.mul(a, n).idx()] = id;
        reps.push(a);
    }
    let order = reps.len();
    let mut mul = vec![0u16; order * order];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * order + j] = rep_of[g.mul(a, b).idx()];
        }
    }
    let labels = g
        .labels()
        .iter()
        .map(|(name, e)| (name.clone(), Elem(rep_of[e.idx()])))
        .collect();
    FiniteGroup::from_table(mul, labels)
}

/// The central product of two dihedral groups of order 8, amalgamating the
/// two central involutions; order 32. Generators: `x`, `y` from the first
/// factor (rotation, reflection) and `z`, `w` from the second.
pub fn central_product_d4_d4() -> FiniteGroup {
    let d4 = generalized_dihedral(&cyclic(4)).expect("D4");
    let prod = direct_product(&d4, &d4).expect("D4 x D4");
    let x = prod.label("x").unwrap();
    let z = prod.label("x'").unwrap();
    let x2 = prod.mul(x, x);
    let z2 = prod.mul(z, z);
    let n = prod.mul(x2, z2);
    let q = quotient_by_central_involution(&prod, n).expect("central product quotient");
    let relabel = vec![
        ("x".to_string(), q.label("x").unwrap()),
        ("y".to_string(), q.label("b").unwrap()),
        ("z".to_string(), q.label("x'").unwrap()),
        ("w".to_string(), q.label("b'").unwrap()),
    ];
    q.relabel(relabel).expect("relabel central product")
}

// ---------------------------------------------------------------------------
// Coset enumeration
// ---------------------------------------------------------------------------

/// HLT-style Todd-Coxeter coset enumeration of the trivial subgroup,
/// yielding the multiplication table of the presented group.
///
/// `order_bound` is the expected maximum order; the internal coset table
/// may grow to four times that before reporting overflow.
pub fn coset_enumerate(p: &Presentation, order_bound: usize) -> Result<FiniteGroup, GroupError> {
    let ngens = p.generators.len();
    let ncols = 2 * ngens;
    let capacity = 4 * order_bound + 8;
    let col = |g: usize, inverted: bool| 2 * g + usize::from(inverted);
    let inv_col = |c: usize| c ^ 1;

    struct Table {
        entries: Vec<Vec<Option<u32>>>,
        rep: Vec<u32>,
        ncols: usize,
    }
    impl Table {
        fn find(&self, mut c: u32) -> u32 {
            while self.rep[c as usize] != c {
                c = self.rep[c as usize];
            }
            c
        }
        fn get(&self, c: u32, col: usize) -> Option<u32> {
            self.entries[c as usize][col].map(|t| self.find(t))
        }
        fn set(&mut self, a: u32, col: usize, b: u32) {
            self.entries[a as usize][col] = Some(b);
            self.entries[b as usize][col ^ 1] = Some(a);
        }
        fn is_live(&self, c: u32) -> bool {
            self.rep[c as usize] == c
        }
        fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                return;
            }
            let (keep, dead) = if a < b { (a, b) } else { (b, a) };
            self.rep[dead as usize] = keep;
            queue.push(dead);
        }
        fn coincidence(&mut self, a: u32, b: u32) {
            let mut queue = Vec::new();
            self.merge(a, b, &mut queue);
            while let Some(dead) = queue.pop() {
                for c in 0..self.ncols {
                    let Some(target) = self.entries[dead as usize][c].take() else {
                        continue;
                    };
                    let target = self.find(target);
                    // Remove the back-reference from target to dead.
                    if let Some(back) = self.entries[target as usize][c ^ 1] {
                        if self.find(back) == self.find(dead) {
                            self.entries[target as usize][c ^ 1] = None;
                        }
                    }
                    let live = self.find(dead);
                    match self.get(live, c) {
                        Some(existing) => self.merge(existing, target, &mut queue),
                        None => {
                            // Also reconcile with whatever target already
                            // records in the inverse direction.
                            match self.get(target, c ^ 1) {
                                Some(existing) => {
                                    self.set(live, c, target);
                                    self.merge(existing, live, &mut queue);
                                }
                                None => self.set(live, c, target),
                            }
                        }
                    }
                }
            }
        }
    }

    let mut t = Table {
        entries: vec![vec![None; ncols]],
        rep: vec![0],
        ncols,
    };
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| r.iter().map(|&(g, s)| col(g, s)).collect())
        .collect();

    let define = |t: &mut Table, from: u32, c: usize| -> Result<u32, GroupError> {
        if t.entries.len() >= capacity {
            return Err(GroupError::EnumerationOverflow(capacity));
        }
        let new = t.entries.len() as u32;
        t.entries.push(vec![None; ncols]);
        t.rep.push(new);
        t.set(from, c, new);
        Ok(new)
    };

    // scan_and_fill of one relator at one coset.
    let mut alpha: u32 = 0;
    while (alpha as usize) < t.entries.len() {
        if !t.is_live(alpha) {
            alpha += 1;
            continue;
        }
        'relators: for rel in &relators {
            if rel.is_empty() {
                continue;
            }
            let mut f = alpha;
            let mut i = 0usize;
            let mut b = alpha;
            let mut j = rel.len();
            loop {
                while i < j {
                    match t.get(f, rel[i]) {
                        Some(next) => {
                            f = next;
                            i += 1;
                        }
                        None => break,
                    }
                }
                if i == j {
                    if f != b {
                        t.coincidence(f, b);
                    }
                    break;
                }
                while j > i {
                    match t.get(b, inv_col(rel[j - 1])) {
                        Some(prev) => {
                            b = prev;
                            j -= 1;
                        }
                        None => break,
                    }
                }
                if j == i {
                    if f != b {
                        t.coincidence(f, b);
                    }
                    break;
                } else if j == i + 1 {
                    t.set(f, rel[i], b);
                    break;
                } else {
                    define(&mut t, f, rel[i])?;
                }
            }
            if !t.is_live(alpha) {
                break 'relators;
            }
        }
        if t.is_live(alpha) {
            for c in 0..ncols {
                if t.get(alpha, c).is_none() {
                    define(&mut t, alpha, c)?;
                }
            }
        }
        alpha += 1;
    }

    // Compact live cosets; coset 0 is the identity.
    let live: Vec<u32> = (0..t.entries.len() as u32).filter(|&c| t.is_live(c)).collect();
    let order = live.len();
    if order > order_bound {
        return Err(GroupError::OrderBoundExceeded { found: order, bound: order_bound });
    }
    if order > MAX_ORDER {
        return Err(GroupError::OrderTooLarge(order));
    }
    let mut new_id = vec![u32::MAX; t.entries.len()];
    for (i, &c) in live.iter().enumerate() {
        new_id[c as usize] = i as u32;
    }
    let action = |t: &Table, c: usize, colid: usize| -> usize {
        let raw = t.get(live[c], colid).expect("closed table");
        new_id[raw as usize] as usize
    };
    // Defining word of each coset via a breadth-first spanning tree.
    let mut word: Vec<Option<Vec<usize>>> = vec![None; order];
    word[0] = Some(Vec::new());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let c = queue[head];
        head += 1;
        for colid in 0..ncols {
            let d = action(&t, c, colid);
            if word[d].is_none() {
                let mut w = word[c].clone().unwrap();
                w.push(colid);
                word[d] = Some(w);
                queue.push(d);
            }
        }
    }
    let mut mul = vec![0u16; order * order];
    for a in 0..order {
        for bb in 0..order {
            let mut c = a;
            for &colid in word[bb].as_ref().expect("connected coset graph") {
                c = action(&t, c, colid);
            }
            mul[a * order + bb] = c as u16;
        }
    }
    let labels = p
        .generators
        .iter()
        .enumerate()
        .map(|(g, name)| (name.clone(), Elem(action(&t, 0, col(g, false)) as u16)))
        .collect();
    FiniteGroup::from_table(mul, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g1 = cyclic(1);
        assert_eq!(g1.order(), 1);
        let g3 = cyclic(3);
        let x = g3.label("x").unwrap();
        assert_eq!(g3.element_order(x), 3);
        let g4 = cyclic(4);
        let x = g4.label("x").unwrap();
        assert_eq!(g4.inv(x), g4.mul(g4.mul(x, x), x));
        assert_eq!(g4.name(g4.inv(x)), "x^-1");
    }

    #[test]
    fn elementary_abelian_is_exponent_two() {
        assert_eq!(elementary_abelian_2(0).order(), 1);
        let g = elementary_abelian_2(4);
        assert_eq!(g.order(), 16);
        for e in g.elements().skip(1) {
            assert_eq!(g.element_order(e), 2);
        }
        let g5 = elementary_abelian_2(5);
        let x: Elem = (1..=5)
            .map(|i| g5.label(&format!("x{i}")).unwrap())
            .fold(g5.identity(), |a, b| g5.mul(a, b));
        assert_eq!(g5.mul(x, x), g5.identity());
    }

    #[test]
    fn direct_products() {
        let z4xz2 = direct_product(&cyclic(4), &cyclic(2)).unwrap();
        assert_eq!(z4xz2.order(), 8);
        let trivial_left = direct_product(&cyclic(1), &cyclic(5)).unwrap();
        assert_eq!(trivial_left.order(), 5);
        assert_eq!(trivial_left.element_order(Elem(1)), 5);
        let big = direct_product(&cyclic(4), &elementary_abelian_2(4)).unwrap();
        assert_eq!(big.order(), 64);
    }

    #[test]
    fn generalized_dihedral_structure() {
        let d3 = generalized_dihedral(&cyclic(3)).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());
        // GD over an elementary abelian 2-group stays elementary abelian.
        let g = generalized_dihedral(&elementary_abelian_2(2)).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 2);
        // Exponent is lcm(2, exponent of H).
        let h = direct_product(&cyclic(4), &cyclic(2)).unwrap();
        let gd = generalized_dihedral(&h).unwrap();
        assert_eq!(gd.order(), 16);
        assert!(!gd.is_abelian());
        assert_eq!(gd.exponent(), 4);
        // b h b = h^-1 for every h, and H sits at indices 0..|H|.
        let b = gd.label("b").unwrap();
        for h_elem in 0..8u16 {
            let h_e = Elem(h_elem);
            assert_eq!(gd.mul(gd.mul(b, h_e), b), gd.inv(h_e));
        }
        assert!(generalized_dihedral(&quaternion()).is_err());
        // Degenerate input: GD of the trivial group is Z2.
        let z2 = generalized_dihedral(&cyclic(1)).unwrap();
        assert_eq!(z2.order(), 2);
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion();
        assert_eq!(q.order(), 8);
        let x = q.label("x").unwrap();
        let y = q.label("y").unwrap();
        assert_eq!(q.element_order(x), 4);
        assert_eq!(q.mul(x, x), q.mul(y, y));
        assert_eq!(q.conj(x, y), q.inv(x));
        assert_eq!(q.order_statistics().get(&2), Some(&1));
    }

    #[test]
    fn set_operations() {
        let g = cyclic(4);
        let x = g.label("x").unwrap();
        let a = ElemSet::from_elems([x]);
        assert!(g.set_product(&ElemSet::empty(), &a).is_empty());
        assert_eq!(g.set_inverse(&a).iter().next().unwrap(), Elem(3));
        assert!(g.set_inverse(&ElemSet::empty()).is_empty());
        // In an exponent-2 group inversion fixes every subset.
        let e = elementary_abelian_2(3);
        let s = ElemSet::from_elems([Elem(1), Elem(5), Elem(6)]);
        assert_eq!(e.set_inverse(&s), s);
    }

    #[test]
    fn set_product_associativity_and_antihomomorphism() {
        let g = generalized_dihedral(&cyclic(4)).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let pick = |r: u64| {
                ElemSet::from_elems((0..g.order() as u16).filter(|i| r >> i & 1 == 1).map(Elem))
            };
            let (a, b, c) = (pick(next()), pick(next()), pick(next()));
            let lhs = g.set_product(&g.set_product(&a, &b), &c);
            let rhs = g.set_product(&a, &g.set_product(&b, &c));
            assert_eq!(lhs, rhs);
            let inv_ab = g.set_inverse(&g.set_product(&a, &b));
            let rev = g.set_product(&g.set_inverse(&b), &g.set_inverse(&a));
            assert_eq!(inv_ab, rev);
        }
    }

    #[test]
    fn words_parse_and_roundtrip() {
        let g = direct_product(&cyclic(4), &elementary_abelian_2(2)).unwrap();
        let relabel = vec![
            ("x".into(), Elem(4)),
            ("y".into(), g.label("x'").unwrap()),
            ("z".into(), g.label("y").unwrap()),
        ];
        let g = g.relabel(relabel).unwrap();
        for e in g.elements() {
            let name = g.name(e).to_string();
            assert_eq!(g.element_from_word(&name).unwrap(), e);
        }
        let x = g.label("x").unwrap();
        let z = g.label("z").unwrap();
        assert_eq!(
            g.element_from_word("x^-1z").unwrap(),
            g.mul(g.inv(x), z)
        );
        assert!(g.element_from_word("q").is_err());
    }

    #[test]
    fn coset_enumeration_of_small_presentations() {
        let z3 = coset_enumerate(&Presentation::parse(&["x"], &["x^3"]).unwrap(), 3).unwrap();
        let c3 = cyclic(3);
        assert_eq!(z3.order(), 3);
        for a in z3.elements() {
            for b in z3.elements() {
                assert_eq!(z3.mul(a, b), c3.mul(a, b));
            }
        }
        // Quaternion presentation agrees with the direct construction.
        let qp = Presentation::parse(&["x", "y"], &["x^4", "y^4", "x^2y^-2", "y^-1xyx"]).unwrap();
        let q = coset_enumerate(&qp, 8).unwrap();
        assert_eq!(q.order(), 8);
        assert!(q.isomorphic(&quaternion()));
        // Relators evaluate to the identity.
        let gens: Vec<Elem> = qp.generators.iter().map(|n| q.label(n).unwrap()).collect();
        for r in &qp.relators {
            assert_eq!(q.eval_letters(r, &gens), q.identity());
        }
    }

    #[test]
    fn coset_enumeration_with_heavy_coincidences() {
        // Redundant power relators collapse to the gcd.
        let p = Presentation::parse(&["x"], &["x^6", "x^8"]).unwrap();
        let g = coset_enumerate(&p, 8).unwrap();
        assert_eq!(g.order(), 2);
        // A dihedral presentation agrees with the doubled cyclic group.
        let d5 = Presentation::parse(&["x", "y"], &["x^5", "y^2", "(xy)^2"]).unwrap();
        let g = coset_enumerate(&d5, 10).unwrap();
        assert_eq!(g.order(), 10);
        assert!(g.isomorphic(&generalized_dihedral(&cyclic(5)).unwrap()));
    }

    #[test]
    fn coset_enumeration_bound_errors() {
        let p = Presentation::parse(&["x"], &["x^8"]).unwrap();
        match coset_enumerate(&p, 4) {
            Err(GroupError::OrderBoundExceeded { found: 8, bound: 4 })
            | Err(GroupError::EnumerationOverflow(_)) => {}
            other => panic!("expected a bound error, got {other:?}"),
        }
        // A presentation of an infinite group overflows the table.
        let free = Presentation::parse(&["x", "y"], &["x^2"]).unwrap();
        assert!(matches!(coset_enumerate(&free, 8), Err(GroupError::EnumerationOverflow(_))));
    }

    #[test]
    fn trivial_factor_keeps_the_other_table() {
        let b = quaternion();
        let prod = direct_product(&cyclic(1), &b).unwrap();
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(prod.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(cyclic(3).automorphism_group().unwrap().order(), 2);
        assert_eq!(elementary_abelian_2(2).automorphism_group().unwrap().order(), 6);
        let q8 = quaternion().automorphism_group().unwrap();
        assert_eq!(q8.order(), 24);
    }

    #[test]
    fn rank_four_automorphisms_match_linear_group_order() {
        // Independent oracle: |GL(4, 2)| by the product formula.
        let n = 4u32;
        let expected: u128 = (0..n).map(|i| (1u128 << n) - (1u128 << i)).product();
        assert_eq!(expected, 20160);
        let aut = elementary_abelian_2(4).automorphism_group().unwrap();
        assert_eq!(aut.order(), expected);
    }

    #[test]
    fn generalized_dihedral_detection() {
        let d4 = generalized_dihedral(&cyclic(4)).unwrap();
        let (h, b) = d4.generalized_dihedral_split().unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(d4.element_order(b), 2);
        assert!(elementary_abelian_2(2).generalized_dihedral_split().is_some());
        assert!(quaternion().generalized_dihedral_split().is_none());
        assert!(cyclic(5).generalized_dihedral_split().is_none());
        // Z2 is the generalized dihedral double of the trivial group; the
        // classification's exclusions apply only above order 2.
        let (h, _) = cyclic(2).generalized_dihedral_split().unwrap();
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn central_product_of_two_d4() {
        let g = central_product_d4_d4();
        assert_eq!(g.order(), 32);
        let x = g.label("x").unwrap();
        let z = g.label("z").unwrap();
        assert_eq!(g.mul(x, x), g.mul(z, z));
        // Oracle: center computed by brute force over the table.
        let center: Vec<Elem> = g
            .elements()
            .filter(|&a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
            .collect();
        assert_eq!(center.len(), 2);
    }
}
