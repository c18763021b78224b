//! The explicit connection-set constructions, one builder per family, the
//! arc-count claim evaluators, and the final existence dispatcher.
//!
//! Families:
//! - lifts of an oriented regular representation to any number of parts;
//! - the valency-two families for the trivial group and the elementary
//!   abelian 2-groups of rank at most four (literal tables for small part
//!   counts, three-walk patterns from part count 12 on);
//! - the rank-five-and-up elementary abelian family built from the set
//!   triple (S, R, T);
//! - generalized dihedral doubles, both over bases with an oriented
//!   regular representation and over the six bases without one;
//! - the eleven exceptional groups, sharing one template.
//!
//! Where the source tables contain transcription defects (digons, or
//! involutions inside a one-sided set), the builders use minimally
//! corrected data, verified by the automorphism engine; the literal
//! printed variants are kept available so tests can demonstrate the
//! defect.

use crate::catalog::{self, TheoremClass};
use crate::digraph::Digraph;
use crate::group::{
    elementary_abelian_2, generalized_dihedral, Elem, ElemSet, FiniteGroup, GroupError,
};
use crate::mcayley::{build, ConnectionSets};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("connection set violates a precondition: {0}")]
    BadInput(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error("cannot parse construction id {0:?}: {1}")]
    BadId(String, String),
}

/// Largest supported part count; keeps vertex counts at interactive scale.
pub const MAX_PARTS: usize = 256;

fn check_parts(m: usize) -> Result<(), ConstructionError> {
    if m > MAX_PARTS {
        return Err(ConstructionError::OutOfRange(format!(
            "part count {m} exceeds the supported maximum {MAX_PARTS}"
        )));
    }
    Ok(())
}

/// A construction instantiated over its group.
#[derive(Clone, Debug)]
pub struct Construction {
    pub group_name: String,
    pub group: FiniteGroup,
    pub sets: ConnectionSets,
}

// ---------------------------------------------------------------------------
// Lifting an oriented regular representation
// ---------------------------------------------------------------------------

fn check_orr_input(g: &FiniteGroup, r: &ElemSet, a: Elem) -> Result<(), ConstructionError> {
    if g.order() < 3 {
        return Err(ConstructionError::OutOfRange("group order must be at least 3".into()));
    }
    if r.contains(g.identity()) {
        return Err(ConstructionError::BadInput("identity in R".into()));
    }
    if !r.is_disjoint(&g.set_inverse(r)) {
        return Err(ConstructionError::BadInput("R meets its own inverse set".into()));
    }
    if !r.contains(a) {
        return Err(ConstructionError::BadInput("a must lie in R".into()));
    }
    Ok(())
}

/// Two-part lift: `BiCay(G, R, R^-1, {1}, {a^-1})`, valency `|R| + 1`.
pub fn orr_lift_o2sr(
    g: &FiniteGroup,
    r: &ElemSet,
    a: Elem,
) -> Result<ConnectionSets, ConstructionError> {
    check_orr_input(g, r, a)?;
    Ok(ConnectionSets::bicay(
        *r,
        g.set_inverse(r),
        ElemSet::singleton(g.identity()),
        ElemSet::singleton(g.inv(a)),
    ))
}

/// Lift to `m >= 3` parts, valency `|R| + 2`: row `i` holds the diagonal
/// set (`R`, inverted on part 1), an arc to the previous part and an arc
/// to the next part.
pub fn orr_lift_omsr(
    g: &FiniteGroup,
    r: &ElemSet,
    a: Elem,
    m: usize,
) -> Result<ConnectionSets, ConstructionError> {
    check_orr_input(g, r, a)?;
    if m < 3 {
        return Err(ConstructionError::OutOfRange("part count must be at least 3".into()));
    }
    check_parts(m)?;
    let one = ElemSet::singleton(g.identity());
    let a_inv = ElemSet::singleton(g.inv(a));
    let mut t = ConnectionSets::new(m);
    t.set_cell(0, 1, one);
    t.set_cell(1, 0, a_inv);
    t.set_cell(1, 1, g.set_inverse(r));
    t.set_cell(m - 1, 0, ElemSet::singleton(a));
    for i in 0..m {
        if i != 1 {
            t.set_cell(i, (i + m - 1) % m, one);
            t.set_cell(i, i, *r);
        }
        if i != 0 && i != m - 1 {
            t.set_cell(i, i + 1, a_inv);
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Arc-count claims
// ---------------------------------------------------------------------------

/// Measured versus predicted arc counts of the induced digraphs on the
/// out-neighborhoods of the identity vertices, one entry per part.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    /// Number of multiplicative triples inside the base connection set.
    pub k: usize,
    pub measured: BTreeMap<usize, usize>,
    pub expected: BTreeMap<usize, usize>,
}

impl ClaimReport {
    pub fn matches(&self) -> bool {
        self.measured == self.expected
    }
}

/// `|E_R|`: the number of pairs `(x, y)` in `R x R` with `x y` again in
/// `R`; equals the arc count of the subdigraph induced on the identity's
/// out-neighborhood in `Cay(G, R)`.
pub fn triple_count(g: &FiniteGroup, r: &ElemSet) -> usize {
    let mut k = 0;
    for x in r.iter() {
        for y in r.iter() {
            if r.contains(g.mul(x, y)) {
                k += 1;
            }
        }
    }
    k
}

fn measure_identity_neighborhoods(
    g: &FiniteGroup,
    t: &ConnectionSets,
) -> Result<BTreeMap<usize, usize>, ConstructionError> {
    let built = build(g, t).map_err(|e| ConstructionError::BadInput(e.to_string()))?;
    let mut out = BTreeMap::new();
    for i in 0..t.m() {
        let nbhd = built.digraph.out_neighbors(built.vertex(g.identity(), i));
        out.insert(i, built.digraph.arc_count(&nbhd, &nbhd));
    }
    Ok(out)
}

/// Claim evaluation for the lift construction, `m >= 3`.
pub fn claim_orr_lift(
    g: &FiniteGroup,
    r: &ElemSet,
    a: Elem,
    m: usize,
) -> Result<ClaimReport, ConstructionError> {
    let t = orr_lift_omsr(g, r, a, m)?;
    let k = triple_count(g, r);
    let mut expected = BTreeMap::new();
    if m == 3 {
        expected.insert(0, k + 2);
        expected.insert(1, k + 3);
    } else {
        expected.insert(0, k + 1);
        expected.insert(1, k + 2);
        for i in 2..=m - 2 {
            expected.insert(i, k);
        }
    }
    expected.insert(m - 1, k + 1);
    Ok(ClaimReport { k, measured: measure_identity_neighborhoods(g, &t)?, expected })
}

// ---------------------------------------------------------------------------
// Trivial group: valency-two families
// ---------------------------------------------------------------------------

/// Chord permutation for 7 <= m <= 11, on top of the full forward cycle.
///
/// The source table's chord at part 2 collides with the cycle (a digon
/// between parts 1 and 2) and cannot be repaired in place, because its
/// remaining chords force that image. The corrected chords reroute part 2
/// to part 0 and end the `+2` chain at parts 1 and 2; this is the
/// minimum-distance valid completion with a trivial automorphism group,
/// found by exhaustive search over chord permutations (engine-verified
/// for every part count in range).
fn trivial_chords(m: usize) -> Vec<(usize, usize)> {
    if m == 7 {
        return vec![(0, 3), (1, 4), (2, 0), (3, 5), (4, 6), (5, 2), (6, 1)];
    }
    let mut chords = vec![(0, 3), (1, 4), (2, 0)];
    for j in 3..=m - 3 {
        chords.push((j, j + 2));
    }
    chords.push((m - 2, 1));
    chords.push((m - 1, 2));
    chords
}

/// The literal chord system as printed, kept for the defect test.
pub fn trivial_printed_chords(m: usize) -> Vec<(usize, usize)> {
    let mut chords = vec![(0, 3), (1, 4), (2, 1), (m - 1, 2)];
    for j in 3..=m - 2 {
        chords.push((j, (j + 2) % m));
    }
    chords
}

/// The three arc walks of the part-count-12-and-up pattern: a 7-cycle, a
/// walk through the high parts, and a long walk revisiting parts 7 and 8.
/// Together they hit every part with out- and in-degree exactly two.
pub fn trivial_walks(m: usize) -> [Vec<(usize, usize)>; 3] {
    assert!(m >= 12);
    let first: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    let mut second = vec![(9, 10)];
    if m % 2 == 0 {
        let mut v = 10;
        while v + 2 <= m - 2 {
            second.push((v, v + 2));
            v += 2;
        }
        second.push((m - 2, m - 1));
        let mut v = m - 1;
        while v >= 13 {
            second.push((v, v - 2));
            v -= 2;
        }
    } else {
        let mut v = 10;
        while v + 2 <= m - 3 {
            second.push((v, v + 2));
            v += 2;
        }
        second.push((m - 3, 8));
        second.push((8, m - 1));
        second.push((m - 1, m - 2));
        let mut v = m - 2;
        while v >= 13 {
            second.push((v, v - 2));
            v -= 2;
        }
    }
    second.push((11, 1));
    second.push((1, 9));
    let mut third = vec![
        (0, 4),
        (4, 2),
        (2, 6),
        (6, 7),
        (7, 8),
        (8, 3),
        (3, 5),
        (5, 7),
    ];
    if m % 2 == 0 {
        third.push((7, m - 2));
        third.push((m - 2, 8));
        third.push((8, m - 1));
        let mut v = m - 1;
        while v >= 13 {
            third.push((v, v - 3));
            third.push((v - 3, v - 2));
            v -= 2;
        }
    } else {
        third.push((7, m - 1));
        third.push((m - 1, m - 3));
        third.push((m - 3, m - 2));
        let mut v = m - 2;
        while v >= 13 {
            third.push((v, v - 3));
            third.push((v - 3, v - 2));
            v -= 2;
        }
    }
    third.push((11, 9));
    third.push((9, 0));
    [first, second, third]
}

/// Valency-two family over the trivial group, `m >= 7`.
pub fn trivial_omsr(m: usize) -> Result<ConnectionSets, ConstructionError> {
    if m < 7 {
        return Err(ConstructionError::OutOfRange(
            "the trivial group admits these digraphs only from 7 parts on".into(),
        ));
    }
    check_parts(m)?;
    let mut t = ConnectionSets::new(m);
    let one = Elem(0);
    if m <= 11 {
        for i in 0..m {
            t.insert(i, (i + 1) % m, one);
        }
        for (i, j) in trivial_chords(m) {
            t.insert(i, j, one);
        }
    } else {
        for walk in trivial_walks(m) {
            for (i, j) in walk {
                t.insert(i, j, one);
            }
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Elementary abelian 2-groups of rank 1..=4: valency-two/three families
// ---------------------------------------------------------------------------

/// Literal tables for rank 1 (over `<x>`).
///
/// Several printed cell values produce digons (for example parts 3 and 4
/// both carrying the identity towards each other); the minimal value
/// flips restoring orientedness together with the right automorphism
/// group were found by exhaustive search over the printed cell positions
/// and are marked below. At three parts no valid digraph exists at all
/// (the whole space has been searched; see the nonexistence tests), so
/// the three-part table keeps the closest oriented variant.
fn z2_rank1_cells(m: usize) -> Vec<(usize, usize, Vec<&'static str>)> {
    match m {
        3 => vec![
            (0, 1, vec!["1"]),
            (0, 2, vec!["1"]),
            (2, 1, vec!["1"]), // printed {x}
            (1, 0, vec!["x"]),
            (1, 2, vec!["x"]),
            (2, 0, vec!["x"]), // printed {1}
        ],
        4 => vec![
            (0, 1, vec!["1"]),
            (0, 2, vec!["1"]),
            (3, 0, vec!["1"]),
            (3, 1, vec!["1"]),
            (1, 0, vec!["x"]),
            (1, 2, vec!["x"]),
            (2, 3, vec!["1", "x"]),
        ],
        5 => vec![
            (0, 1, vec!["1"]),
            (0, 3, vec!["1"]),
            (2, 0, vec!["1"]),
            (2, 4, vec!["x"]), // printed {1}
            (3, 1, vec!["1"]),
            (3, 4, vec!["x"]), // printed {1}
            (4, 3, vec!["1"]),
            (4, 2, vec!["1"]),
            (1, 0, vec!["x"]),
            (1, 2, vec!["x"]),
        ],
        6 => vec![
            (0, 1, vec!["1"]),
            (0, 3, vec!["x"]), // printed {1}
            (2, 0, vec!["1"]),
            (2, 5, vec!["1"]),
            (3, 1, vec!["1"]),
            (3, 4, vec!["x"]), // printed {1}
            (4, 3, vec!["1"]),
            (5, 4, vec!["1"]),
            (1, 0, vec!["x"]),
            (1, 2, vec!["x"]),
            (4, 5, vec!["x"]),
            (5, 2, vec!["x"]),
        ],
        _ => {
            // 7 <= m <= 11; even part counts additionally flip (0, 3).
            let zero_three = if m % 2 == 0 { "x" } else { "1" };
            let mut cells: Vec<(usize, usize, Vec<&'static str>)> = vec![
                (0, 1, vec!["1"]),
                (0, 3, vec![zero_three]), // printed {1}
                (2, 0, vec!["1"]),
                (2, 5, vec!["1"]),
                (3, 1, vec!["1"]),
                (3, 4, vec!["x"]), // printed {1}
                (4, 3, vec!["1"]),
                (5, 6, vec!["1"]),
                (m - 1, 4, vec!["1"]),
                (1, 0, vec!["x"]),
                (1, 2, vec!["x"]),
                (4, m - 1, vec!["x"]),
                (5, 2, vec!["x"]),
                (m - 1, m - 2, vec!["x"]),
            ];
            for i in 6..=m - 2 {
                cells.push((i, i + 1, vec!["1"]));
                cells.push((i, i - 1, vec!["x"]));
            }
            cells
        }
    }
}

/// Literal tables for rank 2 (over `<x, y>`), as printed.
fn z2_rank2_cells(m: usize) -> Vec<(usize, usize, Vec<&'static str>)> {
    match m {
        3 => vec![
            (0, 1, vec!["1"]),
            (1, 2, vec!["1"]),
            (2, 1, vec!["x"]),
            (1, 0, vec!["y"]),
            (2, 0, vec!["y"]),
            (0, 2, vec!["xy"]),
        ],
        4 => vec![
            (0, 1, vec!["1"]),
            (1, 3, vec!["1"]),
            (3, 2, vec!["1"]),
            (2, 3, vec!["x"]),
            (3, 1, vec!["x"]),
            (1, 0, vec!["y"]),
            (2, 0, vec!["y"]),
            (0, 2, vec!["xy"]),
        ],
        _ => {
            let mut cells: Vec<(usize, usize, Vec<&'static str>)> = vec![
                (0, 1, vec!["1"]),
                (1, 3, vec!["1"]),
                (3, 4, vec!["1"]),
                (m - 1, 2, vec!["1"]),
                (1, 0, vec!["y"]),
                (2, 0, vec!["y"]),
                (0, 2, vec!["xy"]),
                (2, m - 1, vec!["x"]),
                (3, 1, vec!["x"]),
                (m - 1, m - 2, vec!["x"]),
            ];
            for i in 4..=m - 2 {
                cells.push((i, i + 1, vec!["1"]));
                cells.push((i, i - 1, vec!["x"]));
            }
            cells
        }
    }
}

/// Literal tables for rank 3 (over `<x, y, z>`), as printed except that
/// the four-part table omits the cell at `(1, 0)`; the value `{z}` is the
/// one used at three parts and from five parts on.
fn z2_rank3_cells(m: usize) -> Vec<(usize, usize, Vec<&'static str>)> {
    match m {
        3 => vec![
            (0, 1, vec!["1"]),
            (1, 2, vec!["1"]),
            (2, 1, vec!["x"]),
            (2, 0, vec!["y"]),
            (1, 0, vec!["z"]),
            (0, 2, vec!["z"]),
        ],
        4 => vec![
            (0, 1, vec!["1"]),
            (1, 3, vec!["1"]),
            (3, 2, vec!["1"]),
            (2, 3, vec!["x"]),
            (3, 1, vec!["x"]),
            (2, 0, vec!["y"]),
            (0, 2, vec!["z"]),
            (1, 0, vec!["z"]), // omitted in the source
        ],
        _ => {
            let mut cells: Vec<(usize, usize, Vec<&'static str>)> = vec![
                (0, 1, vec!["1"]),
                (1, 3, vec!["1"]),
                (3, 4, vec!["1"]),
                (m - 1, 2, vec!["1"]),
                (2, 0, vec!["y"]),
                (1, 0, vec!["z"]),
                (0, 2, vec!["z"]),
                (2, m - 1, vec!["x"]),
                (3, 1, vec!["x"]),
                (m - 1, m - 2, vec!["x"]),
            ];
            for i in 4..=m - 2 {
                cells.push((i, i + 1, vec!["1"]));
                cells.push((i, i - 1, vec!["x"]));
            }
            cells
        }
    }
}

/// Literal tables for rank 4 (over `<x, y, z, w>`), valency three.
fn z2_rank4_cells(m: usize) -> Vec<(usize, usize, Vec<&'static str>)> {
    let mut cells: Vec<(usize, usize, Vec<&'static str>)> = vec![
        (0, 1, vec!["1", "y", "xy"]),
        (1, 2, vec!["1", "z", "w"]),
        (m - 1, 0, vec!["y", "w", "xw"]),
    ];
    for i in 2..=m - 2 {
        cells.push((i, i + 1, vec!["x", "y", "w"]));
    }
    cells
}

/// Overrides applied to the three-walk pattern to spread the rank
/// generators across the layers, for part counts 12 and up.
fn z2_small_overrides(n: usize) -> &'static [((usize, usize), &'static str)] {
    const ALL: [((usize, usize), &'static str); 4] =
        [((6, 0), "x"), ((1, 2), "y"), ((8, 3), "z"), ((4, 5), "w")];
    &ALL[..n]
}

/// The valency-two (rank four below twelve parts: valency-three) family
/// over `Z2^n`, `1 <= n <= 4`, `m >= 3`.
pub fn z2_small_omsr(n: usize, m: usize) -> Result<ConnectionSets, ConstructionError> {
    if !(1..=4).contains(&n) {
        return Err(ConstructionError::OutOfRange("rank must be between 1 and 4".into()));
    }
    if m < 3 {
        return Err(ConstructionError::OutOfRange("part count must be at least 3".into()));
    }
    check_parts(m)?;
    let g = elementary_abelian_2(n);
    let mut t = ConnectionSets::new(m);
    if m <= 11 {
        let cells = match n {
            1 => z2_rank1_cells(m),
            2 => z2_rank2_cells(m),
            3 => z2_rank3_cells(m),
            _ => z2_rank4_cells(m),
        };
        for (i, j, words) in cells {
            t.set_cell(i, j, g.set_from_words(&words)?);
        }
    } else {
        for walk in trivial_walks(m) {
            for (i, j) in walk {
                t.insert(i, j, g.identity());
            }
        }
        for &((i, j), word) in z2_small_overrides(n) {
            t.set_cell(i, j, ElemSet::singleton(g.element_from_word(word)?));
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Elementary abelian 2-groups of rank n >= 5
// ---------------------------------------------------------------------------

/// The defining set triple over `Z2^n = <x1..xn>` with `x := x1 x2 ... xn`:
/// `S = {1, xi}`, `R = x S`, and `T` made of the consecutive products
/// `xi x(i+1)` plus two weight-four correctors.
pub fn z2_large_sets(
    n: usize,
) -> Result<(FiniteGroup, ElemSet, ElemSet, ElemSet), ConstructionError> {
    if !(5..=8).contains(&n) {
        return Err(ConstructionError::OutOfRange("rank must be between 5 and 8".into()));
    }
    let g = elementary_abelian_2(n);
    let bit = |i: usize| Elem(1 << (i - 1));
    let x = Elem((1u16 << n) - 1);
    let mut s = ElemSet::singleton(g.identity());
    let mut r = ElemSet::singleton(x);
    for i in 1..=n {
        s.insert(bit(i));
        r.insert(g.mul(x, bit(i)));
    }
    let mut t = ElemSet::empty();
    for i in 1..n {
        t.insert(g.mul(bit(i), bit(i + 1)));
    }
    let w4 = |a: usize, b: usize, c: usize, d: usize| {
        g.mul(g.mul(bit(a), bit(b)), g.mul(bit(c), bit(d)))
    };
    t.insert(w4(1, 2, n - 2, n - 1));
    t.insert(w4(1, 2, n - 1, n));
    Ok((g, s, r, t))
}

/// Two parts: the Haar-type digraph `BiCay(G, ∅, ∅, S, T)`, valency n+1.
pub fn z2_large_o2sr(n: usize) -> Result<(FiniteGroup, ConnectionSets), ConstructionError> {
    let (g, s, _, t) = z2_large_sets(n)?;
    Ok((g, ConnectionSets::bicay(ElemSet::empty(), ElemSet::empty(), s, t)))
}

/// Three or more parts, valency 2n+2: `T` backwards out of part 1, `S`
/// forward everywhere, `R` backward elsewhere.
pub fn z2_large_omsr(
    n: usize,
    m: usize,
) -> Result<(FiniteGroup, ConnectionSets), ConstructionError> {
    if m < 3 {
        return Err(ConstructionError::OutOfRange("part count must be at least 3".into()));
    }
    check_parts(m)?;
    let (g, s, r, t) = z2_large_sets(n)?;
    let mut sets = ConnectionSets::new(m);
    sets.set_cell(1, 0, t);
    for i in 0..m {
        sets.set_cell(i, (i + 1) % m, s);
        if i != 1 {
            sets.set_cell(i, (i + m - 1) % m, r);
        }
    }
    Ok((g, sets))
}

// ---------------------------------------------------------------------------
// Generalized dihedral doubles
// ---------------------------------------------------------------------------

fn gd_input(
    h: &FiniteGroup,
    r_h: &ElemSet,
    a: Elem,
) -> Result<(FiniteGroup, Elem), ConstructionError> {
    if h.exponent() <= 2 {
        return Err(ConstructionError::BadInput(
            "base group must have exponent greater than 2".into(),
        ));
    }
    check_orr_input(h, r_h, a)?;
    let g = generalized_dihedral(h)?;
    let b = g.label("b").expect("double carries label b");
    Ok((g, b))
}

/// Two parts over the double of an ORR base:
/// `BiCay(G, R, R, {1, a}, {a, b})`, valency `|R| + 2`.
///
/// Both diagonal cells carry `R` itself. (A variant with the second cell
/// inverted also verifies as a representation, but only this form matches
/// the arc-count claim values, and the three-part template puts `R` on
/// that diagonal too.)
pub fn gendihedral_orr_o2sr(
    h: &FiniteGroup,
    r_h: &ElemSet,
    a: Elem,
) -> Result<(FiniteGroup, ConnectionSets), ConstructionError> {
    let (g, b) = gd_input(h, r_h, a)?;
    let sets = ConnectionSets::bicay(
        *r_h,
        *r_h,
        ElemSet::from_elems([g.identity(), a]),
        ElemSet::from_elems([a, b]),
    );
    Ok((g, sets))
}

/// Three or more parts over the double of an ORR base, valency `|R| + 2`.
pub fn gendihedral_orr_omsr(
    h: &FiniteGroup,
    r_h: &ElemSet,
    a: Elem,
    m: usize,
) -> Result<(FiniteGroup, ConnectionSets), ConstructionError> {
    if m < 3 {
        return Err(ConstructionError::OutOfRange("part count must be at least 3".into()));
    }
    check_parts(m)?;
    let (g, b) = gd_input(h, r_h, a)?;
    let one = ElemSet::singleton(g.identity());
    let r = *r_h;
    let r_inv = g.set_inverse(&r);
    let mut t = ConnectionSets::new(m);
    t.set_cell(0, 0, r);
    t.set_cell(1, 1, r);
    t.set_cell(m - 1, m - 1, r);
    t.set_cell(1, 0, ElemSet::singleton(a));
    t.set_cell(0, 1, one);
    t.set_cell(m - 2, m - 1, ElemSet::singleton(b));
    t.set_cell(m - 1, 0, ElemSet::singleton(g.inv(a)));
    for i in 2..m - 1 {
        t.set_cell(i, i, r_inv);
    }
    for i in 0..m {
        if i != 1 {
            t.set_cell(i, (i + m - 1) % m, one);
        }
        if i != 0 && i != m - 2 && i != m - 1 {
            t.set_cell(i, i + 1, ElemSet::singleton(a));
        }
    }
    Ok((g, t))
}

/// Claim evaluation for the generalized dihedral lift. For two parts the
/// expected counts branch on whether `a^2` lies in `R`; for three and
/// more parts they follow the five claim items.
pub fn claim_gendihedral(
    h: &FiniteGroup,
    r_h: &ElemSet,
    a: Elem,
    m: usize,
) -> Result<ClaimReport, ConstructionError> {
    if m < 2 {
        return Err(ConstructionError::OutOfRange("part count must be at least 2".into()));
    }
    let k = triple_count(h, r_h);
    let (g, t) = if m == 2 {
        gendihedral_orr_o2sr(h, r_h, a)?
    } else {
        gendihedral_orr_omsr(h, r_h, a, m)?
    };
    let mut expected = BTreeMap::new();
    if m == 2 {
        let a2_in_r = r_h.contains(h.mul(a, a));
        expected.insert(0, k + if a2_in_r { 4 } else { 3 });
        expected.insert(1, k + if a2_in_r { 2 } else { 1 });
    } else if m == 3 {
        expected.insert(0, k + 2);
        expected.insert(1, k + 1);
        expected.insert(2, k);
    } else {
        expected.insert(0, k + 1);
        expected.insert(1, k + 2);
        for i in 2..=m - 1 {
            expected.insert(i, k);
        }
    }
    Ok(ClaimReport { k, measured: measure_identity_neighborhoods(&g, &t)?, expected })
}

/// One generalized dihedral family without an ORR base: the base group
/// name, the sets actually used, and the set as printed.
pub struct GdFamily {
    pub base: &'static str,
    pub r: &'static [&'static str],
    pub l: &'static [&'static str],
    pub printed_r: &'static [&'static str],
    /// Cells (R, L, S, T) of the two-part digraph when the template
    /// collapse does not verify; found by exhaustive search.
    pub two_part_override: Option<[&'static [&'static str]; 4]>,
}

/// The six base groups and their set pairs. Families 1 and 2 are printed
/// with `xb` in `R`, an involution of the double (so `R` would meet its
/// own inverse set); the builders use `xy`, matching the third family's
/// pattern.
pub const GD_FAMILIES: [GdFamily; 6] = [
    GdFamily {
        base: "Z4xZ2",
        r: &["x", "xy"],
        l: &["x", "x^-1y"],
        printed_r: &["x", "xb"],
        two_part_override: Some([&[], &[], &["1", "x"], &["y", "b"]]),
    },
    GdFamily {
        base: "Z3^2",
        two_part_override: None,
        r: &["x", "xy"],
        l: &["x", "x^-1y"],
        printed_r: &["x", "xb"],
    },
    GdFamily {
        base: "Z4xZ2^2",
        two_part_override: None,
        r: &["x", "xy"],
        l: &["x", "x^-1yz"],
        printed_r: &["x", "xy"],
    },
    GdFamily {
        base: "Z3xZ2^3",
        two_part_override: None,
        r: &["x", "xy", "xz", "xw"],
        l: &["x", "xz", "xzw", "x^-1yzw"],
        printed_r: &["x", "xy", "xz", "xw"],
    },
    GdFamily {
        base: "Z4xZ2^3",
        two_part_override: None,
        r: &["x", "xy", "xz", "xw"],
        l: &["x", "xz", "xzw", "x^-1yzw"],
        printed_r: &["x", "xy", "xz", "xw"],
    },
    GdFamily {
        base: "Z4xZ2^4",
        two_part_override: None,
        r: &["x", "xy", "xz", "xw", "xu"],
        l: &["x", "xz", "x^-1zw", "xyzw", "x^-1zwu"],
        printed_r: &["x", "xy", "xz", "xw", "xu"],
    },
];

/// Shared template of the no-ORR-base families: `R` on the first diagonal
/// cell, `L` on the others, `b` across parts 0 to 1, `x^-1` back, then
/// identity forward and `x` backward. Two parts collapse to
/// `BiCay(G, R, L, {b}, {x^-1})`.
pub fn gd_noorr_template(
    g: &FiniteGroup,
    x: Elem,
    b: Elem,
    r: ElemSet,
    l: ElemSet,
    m: usize,
) -> ConnectionSets {
    if m == 2 {
        return ConnectionSets::bicay(r, l, ElemSet::singleton(b), ElemSet::singleton(g.inv(x)));
    }
    let mut t = ConnectionSets::new(m);
    t.set_cell(0, 0, r);
    t.set_cell(1, 0, ElemSet::singleton(g.inv(x)));
    t.set_cell(0, 1, ElemSet::singleton(b));
    for i in 1..m {
        t.set_cell(i, i, l);
        t.set_cell(i, (i + 1) % m, ElemSet::singleton(g.identity()));
    }
    for i in 0..m {
        if i != 1 {
            t.set_cell(i, (i + m - 1) % m, ElemSet::singleton(x));
        }
    }
    t
}

/// Builds family `family` (1-based) for `m >= 2` parts.
pub fn gendihedral_noorr_omsr(
    family: usize,
    m: usize,
) -> Result<(FiniteGroup, ConnectionSets), ConstructionError> {
    let data = GD_FAMILIES
        .get(family.wrapping_sub(1))
        .ok_or_else(|| ConstructionError::OutOfRange("family must be 1..=6".into()))?;
    if m < 2 {
        return Err(ConstructionError::OutOfRange("part count must be at least 2".into()));
    }
    check_parts(m)?;
    let (_, h) = catalog::build_by_name(data.base)?;
    let g = generalized_dihedral(&h)?;
    if m == 2 {
        if let Some([r, l, s, t]) = data.two_part_override {
            let sets = ConnectionSets::bicay(
                g.set_from_words(r)?,
                g.set_from_words(l)?,
                g.set_from_words(s)?,
                g.set_from_words(t)?,
            );
            return Ok((g, sets));
        }
    }
    let x = g.label("x").expect("base generator x");
    let b = g.label("b").expect("double involution b");
    let r = g.set_from_words(data.r)?;
    let l = g.set_from_words(data.l)?;
    let sets = gd_noorr_template(&g, x, b, r, l, m);
    Ok((g, sets))
}

// ---------------------------------------------------------------------------
// The eleven exceptional groups
// ---------------------------------------------------------------------------

/// One exceptional family: catalog name, the sets used, the sets as
/// printed.
pub struct ExceptionalFamily {
    pub group: &'static str,
    pub r: &'static [&'static str],
    pub l: &'static [&'static str],
    /// Word for the lone backward cell of the two-part collapse.
    pub two_part_back: &'static str,
    pub printed_r: &'static [&'static str],
    pub printed_l: &'static [&'static str],
}

/// Families 8..=11 are printed with words like `xy` that square to the
/// identity in those groups (their defining relations force it), so the
/// printed sets meet their own inverse sets. The working sets keep the
/// same sizes and the distinguished generator `x`; they were found by the
/// deterministic companion search and verified as representations for
/// every part count in the acceptance grid.
pub const EXCEPTIONAL_FAMILIES: [ExceptionalFamily; 11] = [
    ExceptionalFamily {
        group: "Z4xZ2",
        r: &["x", "xy"],
        l: &["x", "x^-1y"],
        two_part_back: "y",
        printed_r: &["x", "xy"],
        printed_l: &["x", "x^-1y"],
    },
    ExceptionalFamily {
        group: "Q8",
        r: &["x", "xy"],
        l: &["x", "x^-1y"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy"],
        printed_l: &["x", "x^-1y"],
    },
    ExceptionalFamily {
        group: "Z3^2",
        r: &["x", "xy"],
        l: &["x", "x^-1y"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy"],
        printed_l: &["x", "x^-1y"],
    },
    ExceptionalFamily {
        group: "Z4xZ2^2",
        r: &["x", "xy", "xz"],
        l: &["x", "x^-1y", "x^-1yz"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy", "xz"],
        printed_l: &["x", "x^-1y", "x^-1yz"],
    },
    ExceptionalFamily {
        group: "Z3xZ2^3",
        r: &["x", "xy", "xz", "xw"],
        l: &["x", "x^-1y", "x^-1yz", "x^-1yzw"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy", "xz", "xw"],
        printed_l: &["x", "x^-1y", "x^-1yz", "x^-1yzw"],
    },
    ExceptionalFamily {
        group: "Z4xZ2^3",
        r: &["x", "xy", "xz", "xw"],
        l: &["x", "x^-1y", "x^-1yz", "x^-1yzw"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy", "xz", "xw"],
        printed_l: &["x", "x^-1y", "x^-1yz", "x^-1yzw"],
    },
    ExceptionalFamily {
        group: "Z4xZ2^4",
        r: &["x", "xy", "xz", "xw", "xu"],
        l: &["x", "x^-1y", "x^-1yz", "x^-1yzw", "x^-1yzwu"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy", "xz", "xw", "xu"],
        printed_l: &["x", "x^-1y", "x^-1yz", "x^-1yzw", "x^-1yzwu"],
    },
    ExceptionalFamily {
        group: "H1",
        r: &["x", "y"],
        l: &["x", "y"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy"],
        printed_l: &["x", "x^-1y"],
    },
    ExceptionalFamily {
        group: "H2",
        r: &["x", "y", "z"],
        l: &["x", "y", "z"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy", "xz"],
        printed_l: &["x", "x^-1y", "x^-1yz"],
    },
    ExceptionalFamily {
        group: "H3",
        r: &["x", "y", "z"],
        l: &["x", "y", "z^-1"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy", "xz"],
        printed_l: &["x", "x^-1y", "x^-1yz"],
    },
    ExceptionalFamily {
        group: "D4oD4",
        r: &["x", "z", "xw", "yz"],
        l: &["x", "z", "xzw", "yz"],
        two_part_back: "x^-1",
        printed_r: &["x", "xy", "xz", "xw"],
        printed_l: &["x", "x^-1y", "x^-1yz", "x^-1yzw"],
    },
];

/// Shared template of the exceptional families; two parts collapse to
/// `BiCay(G, R, L, {1}, {x^-1})`.
pub fn exceptional_template(
    g: &FiniteGroup,
    x: Elem,
    r: ElemSet,
    l: ElemSet,
    m: usize,
) -> ConnectionSets {
    exceptional_template_with_back(g, x, r, l, g.inv(x), m)
}

/// Template with an explicit two-part backward cell; the many-part shape
/// is independent of it.
pub fn exceptional_template_with_back(
    g: &FiniteGroup,
    x: Elem,
    r: ElemSet,
    l: ElemSet,
    back: Elem,
    m: usize,
) -> ConnectionSets {
    if m == 2 {
        return ConnectionSets::bicay(
            r,
            l,
            ElemSet::singleton(g.identity()),
            ElemSet::singleton(back),
        );
    }
    let mut t = ConnectionSets::new(m);
    t.set_cell(0, 0, r);
    t.set_cell(1, 0, ElemSet::singleton(g.inv(x)));
    for i in 1..m {
        t.set_cell(i, i, l);
    }
    for i in 0..m {
        t.set_cell(i, (i + 1) % m, ElemSet::singleton(g.identity()));
        if i != 1 {
            t.set_cell(i, (i + m - 1) % m, ElemSet::singleton(x));
        }
    }
    t
}

/// Builds exceptional family `item` (1-based) for `m >= 2` parts.
pub fn exceptional_omsr(
    item: usize,
    m: usize,
) -> Result<(FiniteGroup, ConnectionSets), ConstructionError> {
    let data = EXCEPTIONAL_FAMILIES
        .get(item.wrapping_sub(1))
        .ok_or_else(|| ConstructionError::OutOfRange("family must be 1..=11".into()))?;
    if m < 2 {
        return Err(ConstructionError::OutOfRange("part count must be at least 2".into()));
    }
    check_parts(m)?;
    let (_, g) = catalog::build_by_name(data.group)?;
    let x = g.label("x").expect("generator x");
    let r = g.set_from_words(data.r)?;
    let l = g.set_from_words(data.l)?;
    debug_assert_eq!(r.len(), l.len());
    let back = g.element_from_word(data.two_part_back)?;
    let sets = exceptional_template_with_back(&g, x, r, l, back, m);
    Ok((g, sets))
}

// ---------------------------------------------------------------------------
// Construction identifiers and the final dispatcher
// ---------------------------------------------------------------------------

/// Parseable identifier for every construction family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionId {
    /// Plain one-part Cayley digraph from an explicit set.
    Orr { group: String, r: Vec<String> },
    OrrLift { group: String, r: Vec<String>, a: Option<String>, m: usize },
    Trivial { m: usize },
    Z2Small { n: usize, m: usize },
    Z2Large { n: usize, m: usize },
    GenDihedralOrr { h: String, r: Vec<String>, a: Option<String>, m: usize },
    GenDihedralNoOrr { h: String, m: usize },
    Exceptional { group: String, m: usize },
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionId::Orr { group, r } => write!(f, "orr:G={group},R={}", r.join("+")),
            ConstructionId::OrrLift { group, r, a, m } => {
                write!(f, "orr_lift:G={group},R={}", r.join("+"))?;
                if let Some(a) = a {
                    write!(f, ",a={a}")?;
                }
                write!(f, ",m={m}")
            }
            ConstructionId::Trivial { m } => write!(f, "trivial:m={m}"),
            ConstructionId::Z2Small { n, m } => write!(f, "z2_small:n={n},m={m}"),
            ConstructionId::Z2Large { n, m } => write!(f, "z2_large:n={n},m={m}"),
            ConstructionId::GenDihedralOrr { h, r, a, m } => {
                write!(f, "gendihedral_orr:H={h},R={}", r.join("+"))?;
                if let Some(a) = a {
                    write!(f, ",a={a}")?;
                }
                write!(f, ",m={m}")
            }
            ConstructionId::GenDihedralNoOrr { h, m } => {
                write!(f, "gendihedral_noorr:H={h},m={m}")
            }
            ConstructionId::Exceptional { group, m } => {
                write!(f, "exceptional:G={group},m={m}")
            }
        }
    }
}

impl std::str::FromStr for ConstructionId {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| ConstructionError::BadId(s.to_string(), msg.to_string());
        let (family, params) = s.split_once(':').unwrap_or((s, ""));
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for part in params.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            map.insert(k.trim(), v.trim());
        }
        let get = |k: &str| map.get(k).copied().ok_or_else(|| bad(&format!("missing {k}=")));
        let num = |k: &str| -> Result<usize, ConstructionError> {
            get(k)?.parse().map_err(|_| bad(&format!("{k} must be a number")))
        };
        let words = |v: &str| -> Vec<String> { v.split('+').map(|w| w.to_string()).collect() };
        Ok(match family {
            "orr" => ConstructionId::Orr { group: get("G")?.to_string(), r: words(get("R")?) },
            "orr_lift" => ConstructionId::OrrLift {
                group: get("G")?.to_string(),
                r: words(get("R")?),
                a: map.get("a").map(|v| v.to_string()),
                m: num("m")?,
            },
            "trivial" => ConstructionId::Trivial { m: num("m")? },
            "z2_small" => ConstructionId::Z2Small { n: num("n")?, m: num("m")? },
            "z2_large" => ConstructionId::Z2Large { n: num("n")?, m: num("m")? },
            "gendihedral_orr" => ConstructionId::GenDihedralOrr {
                h: get("H")?.to_string(),
                r: words(get("R")?),
                a: map.get("a").map(|v| v.to_string()),
                m: num("m")?,
            },
            "gendihedral_noorr" => {
                ConstructionId::GenDihedralNoOrr { h: get("H")?.to_string(), m: num("m")? }
            }
            "exceptional" => {
                ConstructionId::Exceptional { group: get("G")?.to_string(), m: num("m")? }
            }
            other => return Err(bad(&format!("unknown family {other:?}"))),
        })
    }
}

fn resolve_set(g: &FiniteGroup, words: &[String]) -> Result<ElemSet, ConstructionError> {
    let refs: Vec<&str> = words.iter().map(|w| w.as_str()).collect();
    Ok(g.set_from_words(&refs)?)
}

fn pick_a(g: &FiniteGroup, r: &ElemSet, a: &Option<String>) -> Result<Elem, ConstructionError> {
    match a {
        Some(w) => Ok(g.element_from_word(w)?),
        None => r
            .iter()
            .next()
            .ok_or_else(|| ConstructionError::BadInput("R must be non-empty".into())),
    }
}

/// Materializes a construction identifier.
pub fn construct(id: &ConstructionId) -> Result<Construction, ConstructionError> {
    match id {
        ConstructionId::Orr { group, r } => {
            let (entry, g) = catalog::build_by_name(group)?;
            let set = resolve_set(&g, r)?;
            let mut sets = ConnectionSets::new(1);
            sets.set_cell(0, 0, set);
            Ok(Construction { group_name: entry.name, group: g, sets })
        }
        ConstructionId::OrrLift { group, r, a, m } => {
            let (entry, g) = catalog::build_by_name(group)?;
            let set = resolve_set(&g, r)?;
            let a = pick_a(&g, &set, a)?;
            let sets = if *m == 2 {
                orr_lift_o2sr(&g, &set, a)?
            } else {
                orr_lift_omsr(&g, &set, a, *m)?
            };
            Ok(Construction { group_name: entry.name, group: g, sets })
        }
        ConstructionId::Trivial { m } => Ok(Construction {
            group_name: "Z1".into(),
            group: crate::group::cyclic(1),
            sets: trivial_omsr(*m)?,
        }),
        ConstructionId::Z2Small { n, m } => {
            let sets = z2_small_omsr(*n, *m)?;
            Ok(Construction {
                group_name: format!("Z2^{n}"),
                group: elementary_abelian_2(*n),
                sets,
            })
        }
        ConstructionId::Z2Large { n, m } => {
            let (g, sets) = if *m == 2 { z2_large_o2sr(*n)? } else { z2_large_omsr(*n, *m)? };
            Ok(Construction { group_name: format!("Z2^{n}"), group: g, sets })
        }
        ConstructionId::GenDihedralOrr { h, r, a, m } => {
            let (entry, hg) = catalog::build_by_name(h)?;
            let set = resolve_set(&hg, r)?;
            let a = pick_a(&hg, &set, a)?;
            let (g, sets) = if *m == 2 {
                gendihedral_orr_o2sr(&hg, &set, a)?
            } else {
                gendihedral_orr_omsr(&hg, &set, a, *m)?
            };
            Ok(Construction { group_name: format!("GD({})", entry.name), group: g, sets })
        }
        ConstructionId::GenDihedralNoOrr { h, m } => {
            let family = GD_FAMILIES
                .iter()
                .position(|f| f.base == h)
                .ok_or_else(|| {
                    ConstructionError::OutOfRange(format!(
                        "{h} is not one of the six base groups"
                    ))
                })?
                + 1;
            let (g, sets) = gendihedral_noorr_omsr(family, *m)?;
            Ok(Construction { group_name: format!("GD({h})"), group: g, sets })
        }
        ConstructionId::Exceptional { group, m } => {
            let item = EXCEPTIONAL_FAMILIES
                .iter()
                .position(|f| f.group == group)
                .ok_or_else(|| {
                    ConstructionError::OutOfRange(format!("{group} is not an exceptional group"))
                })?
                + 1;
            let (g, sets) = exceptional_omsr(item, *m)?;
            Ok(Construction { group_name: group.clone(), group: g, sets })
        }
    }
}

/// Outcome of the existence classification for a concrete `(G, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremVerdict {
    /// The group admits a representation; a concrete construction is
    /// attached when one can be materialized at this size.
    AdmitsOmsr { construction: Option<ConstructionId> },
    /// Existence is ruled out; `branch` names the classification clause.
    NoOmsrByTheorem { branch: u8 },
    /// The group name is not in the catalog.
    OutOfCatalog,
}

/// Bound up to which the dispatcher searches base sets exhaustively.
const DISPATCH_ORR_SEARCH_BOUND: usize = 16;

/// Decides existence for a catalog group and part count, attaching a
/// construction witness where the positive branch applies.
pub fn theorem_dispatch(group_name: &str, m: usize) -> TheoremVerdict {
    assert!(m >= 1);
    let Ok((entry, g)) = catalog::build_by_name(group_name) else {
        return TheoremVerdict::OutOfCatalog;
    };
    let class = catalog::classify(&g);
    if m == 1 {
        return match class {
            TheoremClass::Trivial | TheoremClass::ElemAbelian2 { n: 1 } => {
                // The empty connection set is a representation here.
                TheoremVerdict::AdmitsOmsr {
                    construction: Some(ConstructionId::Orr { group: entry.name, r: vec![] }),
                }
            }
            TheoremClass::ElemAbelian2 { .. }
            | TheoremClass::GenDihedralOrr
            | TheoremClass::GenDihedralNoOrr { .. }
            | TheoremClass::Exceptional { .. } => TheoremVerdict::NoOmsrByTheorem { branch: 2 },
            TheoremClass::AdmitsOrr => {
                TheoremVerdict::AdmitsOmsr { construction: orr_search_id(&entry.name, &g) }
            }
        };
    }
    if m == 2 {
        match class {
            TheoremClass::Trivial => return TheoremVerdict::NoOmsrByTheorem { branch: 3 },
            TheoremClass::ElemAbelian2 { n } if n <= 4 => {
                return TheoremVerdict::NoOmsrByTheorem { branch: 3 }
            }
            _ => {}
        }
    }
    if (3..=6).contains(&m) && class == TheoremClass::Trivial {
        return TheoremVerdict::NoOmsrByTheorem { branch: 4 };
    }
    let construction = match class {
        TheoremClass::Trivial => Some(ConstructionId::Trivial { m }),
        TheoremClass::ElemAbelian2 { n } if n <= 4 => Some(ConstructionId::Z2Small { n, m }),
        TheoremClass::ElemAbelian2 { n } => Some(ConstructionId::Z2Large { n, m }),
        TheoremClass::Exceptional { item } => Some(ConstructionId::Exceptional {
            group: catalog::EXCEPTIONAL_NAMES[item - 1].to_string(),
            m,
        }),
        TheoremClass::GenDihedralNoOrr { family } => Some(ConstructionId::GenDihedralNoOrr {
            h: catalog::GD_NOORR_BASE_NAMES[family - 1].to_string(),
            m,
        }),
        TheoremClass::GenDihedralOrr => gd_orr_construction(&entry.name, m),
        TheoremClass::AdmitsOrr => orr_lift_construction(&entry.name, &g, m),
    };
    TheoremVerdict::AdmitsOmsr { construction }
}

/// Searched base set for a plain one-part witness, when the group is
/// small enough for the exhaustive search.
fn orr_search_id(name: &str, g: &FiniteGroup) -> Option<ConstructionId> {
    if g.order() > DISPATCH_ORR_SEARCH_BOUND {
        return None;
    }
    let cert = crate::search::find_orr(g, name).ok()?;
    let r = cert.witness_words?;
    Some(ConstructionId::Orr { group: name.to_string(), r })
}

fn orr_lift_construction(name: &str, g: &FiniteGroup, m: usize) -> Option<ConstructionId> {
    if g.order() > DISPATCH_ORR_SEARCH_BOUND {
        return None;
    }
    let cert = crate::search::find_orr(g, name).ok()?;
    let r = cert.witness_words?;
    if r.is_empty() {
        return None;
    }
    Some(ConstructionId::OrrLift { group: name.to_string(), r, a: None, m })
}

fn gd_orr_construction(name: &str, m: usize) -> Option<ConstructionId> {
    let base = name.strip_prefix("GD(")?.strip_suffix(')')?;
    let (_, h) = catalog::build_by_name(base).ok()?;
    if h.order() > DISPATCH_ORR_SEARCH_BOUND {
        return None;
    }
    let cert = crate::search::find_orr(&h, base).ok()?;
    let r = cert.witness_words?;
    if r.is_empty() {
        return None;
    }
    Some(ConstructionId::GenDihedralOrr { h: base.to_string(), r, a: None, m })
}

/// Expected valency of a construction, from its defining family.
pub fn expected_valency(id: &ConstructionId) -> Option<usize> {
    Some(match id {
        ConstructionId::Orr { r, .. } => r.len(),
        ConstructionId::OrrLift { r, m, .. } => r.len() + if *m == 2 { 1 } else { 2 },
        ConstructionId::Trivial { .. } => 2,
        ConstructionId::Z2Small { n, m } => {
            if *n == 4 && *m <= 11 {
                3
            } else {
                2
            }
        }
        ConstructionId::Z2Large { n, m } => {
            if *m == 2 {
                n + 1
            } else {
                2 * n + 2
            }
        }
        ConstructionId::GenDihedralOrr { r, .. } => r.len() + 2,
        ConstructionId::GenDihedralNoOrr { h, m } => {
            let f = GD_FAMILIES.iter().find(|f| f.base == *h)?;
            match (f.two_part_override, *m) {
                (Some([_, _, side, _]), 2) => side.len(),
                _ => f.r.len() + if *m == 2 { 1 } else { 2 },
            }
        }
        ConstructionId::Exceptional { group, m } => {
            let f = EXCEPTIONAL_FAMILIES.iter().find(|f| f.group == *group)?;
            f.r.len() + if *m == 2 { 1 } else { 2 }
        }
    })
}

/// Decomposition self-check for the three-walk patterns: the walks must
/// be closed, arc-disjoint, and cover the digraph exactly.
pub fn walks_partition_arcs(digraph: &Digraph, walks: &[Vec<(usize, usize)>]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for walk in walks {
        if walk.is_empty() {
            return false;
        }
        for idx in 0..walk.len() {
            let (_, to) = walk[idx];
            let (next_from, _) = walk[(idx + 1) % walk.len()];
            if to != next_from {
                return false;
            }
        }
        for &(u, v) in walk {
            if !digraph.has_arc(u as u32, v as u32) || !seen.insert((u, v)) {
                return false;
            }
        }
    }
    seen.len() == digraph.arc_count_total()
}
