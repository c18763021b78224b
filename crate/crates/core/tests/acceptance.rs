//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Every tolerance is exact and pinned in code.
//!
//! Four checks are expected to fail, and fail deliberately: the
//! exhaustive computations in this repository prove their pinned target
//! values wrong.
//! - Criterion 1 pins a positive verdict for the order-2 group on three
//!   parts, but that whole space (27 oriented regular candidates, see the
//!   nonexistence searches) contains no digraph with automorphism group
//!   of order 2; criterion 9 inherits the same cell through the
//!   dispatcher.
//! - Criterion 4 pins |ST| = n^2 - n - 3, but the chain products alone
//!   already force |ST| = n^2 - 4 for the defined triple.
//! - Criterion 5 pins Aut(Cay(G, T)) = 2^n, but every element of the
//!   defined T has even weight, so that Cayley graph is disconnected and
//!   its automorphism group is far larger.
//! The failing assertions print the measured values; everything else
//! must be green.

use omsr_core::aut::{automorphism_group, check_omsr, haar_equivalence};
use omsr_core::catalog::{self, build_by_name};
use omsr_core::cert::CertificateKind;
use omsr_core::constructions::*;
use omsr_core::digraph::{cycle_support, Digraph};
use omsr_core::group::{cyclic, elementary_abelian_2, Elem, ElemSet, FiniteGroup};
use omsr_core::mcayley::{build, ConnectionSets};
use omsr_core::perm::Perm;
use omsr_core::search::{find_omsr, find_orr, run_search, SearchSpace};
use std::time::{Duration, Instant};

/// Deterministic generator for the randomized criteria.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

struct Grid {
    failures: Vec<String>,
    checks: usize,
    max_time: Duration,
}

impl Grid {
    fn new() -> Self {
        Grid { failures: Vec::new(), checks: 0, max_time: Duration::ZERO }
    }

    fn verify_cell(
        &mut self,
        label: &str,
        g: &FiniteGroup,
        sets: &ConnectionSets,
        time_limit: Duration,
    ) {
        self.checks += 1;
        let start = Instant::now();
        let verdict = check_omsr(g, sets).expect("well-formed construction");
        let elapsed = start.elapsed();
        self.max_time = self.max_time.max(elapsed);
        if !verdict.is_omsr {
            self.failures.push(format!(
                "{label}: verdict false (oriented={} valency={:?} aut_order={})",
                verdict.oriented, verdict.valency, verdict.aut_order
            ));
        }
        if elapsed > time_limit {
            self.failures.push(format!("{label}: took {elapsed:?}, limit {time_limit:?}"));
        }
    }

    fn finish(self, name: &str) {
        if self.failures.is_empty() {
            println!("{name}: PASS ({} checks, slowest {:?})", self.checks, self.max_time);
        } else {
            println!("{name}: FAIL ({} of {} checks)", self.failures.len(), self.checks);
            for f in &self.failures {
                println!("  {f}");
            }
            panic!("{name} failed");
        }
    }
}

#[test]
fn criterion_1_positive_grid() {
    let mut grid = Grid::new();
    let one_sec = Duration::from_secs(1);
    let five_sec = Duration::from_secs(5);
    let minute = Duration::from_secs(60);

    let z1 = cyclic(1);
    for m in 7..=14 {
        let sets = trivial_omsr(m).unwrap();
        grid.verify_cell(&format!("trivial m={m}"), &z1, &sets, one_sec);
    }
    for n in 1..=4usize {
        let g = elementary_abelian_2(n);
        for m in 3..=13 {
            let sets = z2_small_omsr(n, m).unwrap();
            grid.verify_cell(&format!("Z2^{n} m={m}"), &g, &sets, five_sec);
        }
    }
    for n in [5usize, 6] {
        for m in 2..=5 {
            let (g, sets) =
                if m == 2 { z2_large_o2sr(n).unwrap() } else { z2_large_omsr(n, m).unwrap() };
            grid.verify_cell(&format!("Z2^{n} m={m}"), &g, &sets, minute);
        }
    }
    // Generalized dihedral doubles over bases with searched one-part sets.
    for base in ["Z3", "Z4"] {
        let (_, h) = build_by_name(base).unwrap();
        let cert = find_orr(&h, base).unwrap();
        let words = cert.witness_words.expect("cyclic bases have witnesses");
        let refs: Vec<&str> = words.iter().map(|w| w.as_str()).collect();
        let r = h.set_from_words(&refs).unwrap();
        let a = r.iter().next().unwrap();
        for m in 2..=6 {
            let (g, sets) = if m == 2 {
                gendihedral_orr_o2sr(&h, &r, a).unwrap()
            } else {
                gendihedral_orr_omsr(&h, &r, a, m).unwrap()
            };
            grid.verify_cell(&format!("GD({base}) m={m}"), &g, &sets, minute);
        }
    }
    for family in 1..=6usize {
        for m in 2..=6 {
            let (g, sets) = gendihedral_noorr_omsr(family, m).unwrap();
            let base = GD_FAMILIES[family - 1].base;
            grid.verify_cell(&format!("GD({base}) m={m}"), &g, &sets, minute);
        }
    }
    for item in 1..=11usize {
        for m in 2..=6 {
            let (g, sets) = exceptional_omsr(item, m).unwrap();
            let name = EXCEPTIONAL_FAMILIES[item - 1].group;
            grid.verify_cell(&format!("exceptional {name} m={m}"), &g, &sets, minute);
        }
    }
    grid.finish("criterion 1 (positive grid)");
}

#[test]
fn criterion_2_negative_searches() {
    let mut failures = Vec::new();
    let start = Instant::now();
    for m in 2..=6 {
        let cert = run_search(&SearchSpace::new(cyclic(1), "Z1", m)).unwrap();
        if cert.kind != CertificateKind::Nonexistence {
            failures.push(format!("(Z1, m={m}): expected nonexistence, got {:?}", cert.kind));
        }
    }
    for n in 1..=3usize {
        let g = elementary_abelian_2(n);
        let cert = run_search(&SearchSpace::new(g, &format!("Z2^{n}"), 2)).unwrap();
        if cert.kind != CertificateKind::Nonexistence {
            failures.push(format!("(Z2^{n}, m=2): expected nonexistence, got {:?}", cert.kind));
        }
        if !cert.reductions_used.is_empty() {
            failures.push(format!("(Z2^{n}, m=2) was not reduction-free"));
        }
    }
    let small_total = start.elapsed();
    if small_total > Duration::from_secs(300) {
        failures.push(format!("reduction-free block took {small_total:?}, limit 5 minutes"));
    }
    let big_start = Instant::now();
    let mut space = SearchSpace::new(elementary_abelian_2(4), "Z2^4", 2);
    space.reductions.group_automorphism_orbits = true;
    let cert = run_search(&space).unwrap();
    if cert.kind != CertificateKind::Nonexistence {
        failures.push(format!("(Z2^4, m=2): expected nonexistence, got {:?}", cert.kind));
    }
    let big_total = big_start.elapsed();
    if big_total > Duration::from_secs(3600) {
        failures.push(format!("(Z2^4, m=2) took {big_total:?}, limit 60 minutes"));
    }
    if failures.is_empty() {
        println!(
            "criterion 2 (negative searches): PASS (small block {small_total:?}, reduced block {big_total:?})"
        );
    } else {
        println!("criterion 2 (negative searches): FAIL");
        for f in &failures {
            println!("  {f}");
        }
        panic!("criterion 2 failed");
    }
}

#[test]
fn criterion_3_arc_count_claims() {
    let mut failures = Vec::new();
    let mut checks = 0;
    for n in [3usize, 5, 7] {
        let g = cyclic(n);
        let x = g.label("x").unwrap();
        let r = ElemSet::singleton(x);
        for m in 3..=8 {
            checks += 1;
            let report = claim_orr_lift(&g, &r, x, m).unwrap();
            if !report.matches() {
                failures.push(format!(
                    "lift claim Z{n} m={m}: measured {:?} expected {:?}",
                    report.measured, report.expected
                ));
            }
        }
    }
    for n in [3usize, 4, 5] {
        let h = cyclic(n);
        let x = h.label("x").unwrap();
        let r = ElemSet::singleton(x);
        for m in 3..=8 {
            checks += 1;
            let report = claim_gendihedral(&h, &r, x, m).unwrap();
            if !report.matches() {
                failures.push(format!(
                    "double claim Z{n} m={m}: measured {:?} expected {:?}",
                    report.measured, report.expected
                ));
            }
        }
    }
    // Two-part counts branch on whether a^2 lies in R.
    let h5 = cyclic(5);
    let x = h5.label("x").unwrap();
    let x2 = h5.mul(x, x);
    let without = claim_gendihedral(&h5, &ElemSet::singleton(x), x, 2).unwrap();
    checks += 1;
    if without.k != 0 || without.expected[&0] != 3 || without.expected[&1] != 1 || !without.matches()
    {
        failures.push(format!("two-part claim, a^2 outside R: {without:?}"));
    }
    let with = claim_gendihedral(&h5, &ElemSet::from_elems([x, x2]), x, 2).unwrap();
    checks += 1;
    if with.k != 1 || with.expected[&0] != 5 || with.expected[&1] != 3 || !with.matches() {
        failures.push(format!("two-part claim, a^2 inside R: {with:?}"));
    }
    if failures.is_empty() {
        println!("criterion 3 (arc-count claims): PASS ({checks} reports)");
    } else {
        println!("criterion 3 (arc-count claims): FAIL");
        for f in &failures {
            println!("  {f}");
        }
        panic!("criterion 3 failed");
    }
}

#[test]
fn criterion_4_set_identities() {
    let mut failures = Vec::new();
    for n in 5..=8usize {
        let (g, s, r, t) = z2_large_sets(n).unwrap();
        let s2 = g.set_product(&s, &s).len();
        let r2 = g.set_product(&r, &r).len();
        let sr_set = g.set_product(&s, &r);
        let st_set = g.set_product(&s, &t);
        let sr = sr_set.len();
        let st = st_set.len();
        let rt = g.set_product(&r, &t).len();
        let want_sq = 1 + n + n * (n - 1) / 2;
        let want_st = n * n - n - 3;
        if s2 != want_sq || r2 != want_sq || sr != want_sq {
            failures.push(format!("n={n}: |S^2|={s2} |R^2|={r2} |SR|={sr}, want {want_sq}"));
        }
        if st != want_st || rt != want_st {
            failures.push(format!(
                "n={n}: |ST|={st} |RT|={rt}, pinned target {want_st} (measured value is n^2-4 = {})",
                n * n - 4
            ));
        }
        if st_set.is_subset(&sr_set) || sr_set.is_subset(&st_set) {
            failures.push(format!("n={n}: ST and SR are nested"));
        }
    }
    if failures.is_empty() {
        println!("criterion 4 (set identities): PASS");
    } else {
        println!("criterion 4 (set identities): FAIL");
        for f in &failures {
            println!("  {f}");
        }
        panic!("criterion 4 failed");
    }
}

#[test]
fn criterion_5_base_graph_rigidity() {
    let mut failures = Vec::new();
    for n in [5usize, 6] {
        let (g, _, _, t) = z2_large_sets(n).unwrap();
        let mut sets = ConnectionSets::new(1);
        sets.set_cell(0, 0, t);
        let built = build(&g, &sets).unwrap();
        let order = automorphism_group(&built.digraph).order();
        if order != (1u128 << n) {
            failures.push(format!("n={n}: automorphism order {order}, want {}", 1u128 << n));
        }
    }
    if failures.is_empty() {
        println!("criterion 5 (base Cayley graph rigidity): PASS");
    } else {
        println!("criterion 5 (base Cayley graph rigidity): FAIL");
        for f in &failures {
            println!("  {f}");
        }
        panic!("criterion 5 failed");
    }
}

#[test]
fn criterion_6_haar_equivalence() {
    let mut rng = Rng(0x2545f4914f6cdd1d);
    let mut checks = 0;
    for name in ["Z2^3", "Z4xZ2", "Z3^2"] {
        let (_, g) = build_by_name(name).unwrap();
        let n = g.order();
        for _ in 0..200 {
            let s = ElemSet::from_elems(
                (0..n as u16).map(Elem).filter(|_| rng.below(2) == 0),
            );
            let t = ElemSet::from_elems(
                (0..n as u16).map(Elem).filter(|_| rng.below(2) == 0),
            );
            // Random permutation of the group elements.
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in (1..n).rev() {
                images.swap(i, rng.below(i as u64 + 1) as usize);
            }
            let sigma = Perm::from_images(images).unwrap();
            let (lhs, rhs) = haar_equivalence(&g, &s, &t, &sigma);
            assert_eq!(
                lhs, rhs,
                "criterion 6: sides disagree over {name} with S={s:?} T={t:?} sigma={sigma:?}"
            );
            checks += 1;
        }
    }
    println!("criterion 6 (two-part equivalence): PASS ({checks} triples)");
}

/// Independent oracle: automorphism count of a digraph given as an arc
/// bitmask, by running through every vertex permutation.
fn bitmask_aut_count(n: usize, arcs: u64, perms: &[Vec<usize>]) -> u64 {
    let mut count = 0;
    for p in perms {
        let mut image = 0u64;
        let mut bits = arcs;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = (k / n, k % n);
            image |= 1u64 << (p[u] * n + p[v]);
        }
        if image == arcs {
            count += 1;
        }
    }
    count
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn digraph_from_mask(n: usize, arcs: u64) -> Digraph {
    let mut list = Vec::new();
    let mut bits = arcs;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        list.push(((k / n) as u32, (k % n) as u32));
    }
    Digraph::from_arcs(n, &list).unwrap()
}

#[test]
fn criterion_7_engine_oracle() {
    // Complete enumeration on at most 5 vertices. Loop positions are
    // excluded from the arc mask.
    let mut checks: u64 = 0;
    for n in 1..=5usize {
        let perms = permutations(n);
        let positions: Vec<usize> =
            (0..n * n).filter(|k| k / n != k % n).collect();
        for choice in 0u64..(1u64 << positions.len()) {
            let mut arcs = 0u64;
            for (bit, &pos) in positions.iter().enumerate() {
                if choice >> bit & 1 == 1 {
                    arcs |= 1u64 << pos;
                }
            }
            let expected = bitmask_aut_count(n, arcs, &perms);
            let engine = automorphism_group(&digraph_from_mask(n, arcs)).order();
            assert_eq!(
                engine, expected as u128,
                "criterion 7: order mismatch on n={n} arcs={arcs:#x}"
            );
            checks += 1;
        }
    }
    // One thousand random digraphs on 6 vertices.
    let mut rng = Rng(0x9e3779b97f4a7c15);
    let perms6 = permutations(6);
    let positions: Vec<usize> = (0..36).filter(|k| k / 6 != k % 6).collect();
    for _ in 0..1000 {
        let mut arcs = 0u64;
        for &pos in &positions {
            if rng.below(3) == 0 {
                arcs |= 1u64 << pos;
            }
        }
        let expected = bitmask_aut_count(6, arcs, &perms6);
        let engine = automorphism_group(&digraph_from_mask(6, arcs)).order();
        assert_eq!(engine, expected as u128, "criterion 7: mismatch on 6 vertices");
        checks += 1;
    }
    println!("criterion 7 (engine oracle): PASS ({checks} digraphs)");
}

#[test]
fn criterion_8_structural_self_checks() {
    let mut failures = Vec::new();
    let mut checks = 0;
    // Every construction in the grid: oriented, regular with the family
    // valency, and with trivial stabilizer of the identity vertex of part
    // 0 whenever the verdict is positive.
    let mut audit = |label: String, g: &FiniteGroup, sets: &ConnectionSets, want: usize| {
        checks += 1;
        let report = sets.validate(g);
        if !report.oriented || !report.loop_free {
            failures.push(format!("{label}: not oriented/loop-free"));
            return;
        }
        let built = build(g, sets).unwrap();
        if built.digraph.is_regular() != Some(want) {
            failures.push(format!(
                "{label}: valency {:?}, family says {want}",
                built.digraph.is_regular()
            ));
        }
        let aut = automorphism_group(&built.digraph);
        if aut.order() == g.order() as u128 {
            let v = built.vertex(g.identity(), 0) as usize;
            if aut.point_stabilizer_order(v) != 1 {
                failures.push(format!("{label}: identity vertex stabilizer is not trivial"));
            }
        }
    };
    let z1 = cyclic(1);
    for m in 7..=14 {
        let id = ConstructionId::Trivial { m };
        audit(format!("trivial m={m}"), &z1, &trivial_omsr(m).unwrap(), expected_valency(&id).unwrap());
    }
    for n in 1..=4usize {
        let g = elementary_abelian_2(n);
        for m in 3..=13 {
            let id = ConstructionId::Z2Small { n, m };
            audit(
                format!("Z2^{n} m={m}"),
                &g,
                &z2_small_omsr(n, m).unwrap(),
                expected_valency(&id).unwrap(),
            );
        }
    }
    for n in [5usize, 6] {
        for m in 2..=5 {
            let id = ConstructionId::Z2Large { n, m };
            let (g, sets) =
                if m == 2 { z2_large_o2sr(n).unwrap() } else { z2_large_omsr(n, m).unwrap() };
            audit(format!("Z2^{n} m={m}"), &g, &sets, expected_valency(&id).unwrap());
        }
    }
    for family in 1..=6usize {
        for m in 2..=6 {
            let base = GD_FAMILIES[family - 1].base;
            let id = ConstructionId::GenDihedralNoOrr { h: base.to_string(), m };
            let (g, sets) = gendihedral_noorr_omsr(family, m).unwrap();
            audit(format!("GD({base}) m={m}"), &g, &sets, expected_valency(&id).unwrap());
        }
    }
    for item in 1..=11usize {
        for m in 2..=6 {
            let name = EXCEPTIONAL_FAMILIES[item - 1].group;
            let id = ConstructionId::Exceptional { group: name.to_string(), m };
            let (g, sets) = exceptional_omsr(item, m).unwrap();
            audit(format!("exceptional {name} m={m}"), &g, &sets, expected_valency(&id).unwrap());
        }
    }
    // Three-walk pattern: the arcs split into exactly the three walks and
    // the parts missing from all triangles are the stated ones.
    for m in 12..=20usize {
        checks += 1;
        let sets = trivial_omsr(m).unwrap();
        let built = build(&z1, &sets).unwrap();
        let walks = trivial_walks(m);
        if walks.len() != 3 || !walks_partition_arcs(&built.digraph, &walks) {
            failures.push(format!("trivial m={m}: walks do not partition the arcs"));
        }
        let cycles = built.digraph.oriented_3cycles();
        let support = cycle_support(m, &cycles);
        let off: Vec<u32> = (0..m as u32).filter(|&v| !support.contains(v)).collect();
        let want: Vec<u32> = if m % 2 == 0 { vec![5, 6, 7, 8] } else { vec![5, 6, 7] };
        if off != want {
            failures.push(format!("trivial m={m}: off-triangle parts {off:?}, want {want:?}"));
        }
    }
    if failures.is_empty() {
        println!("criterion 8 (structural self-checks): PASS ({checks} constructions)");
    } else {
        println!("criterion 8 (structural self-checks): FAIL");
        for f in &failures {
            println!("  {f}");
        }
        panic!("criterion 8 failed");
    }
}

#[test]
fn criterion_9_dispatcher_agreement() {
    let mut failures = Vec::new();
    let mut checks = 0;
    let small: Vec<&str> = catalog::CATALOG_NAMES
        .iter()
        .copied()
        .filter(|name| build_by_name(name).map(|(_, g)| g.order() <= 16).unwrap_or(false))
        .collect();
    for name in &small {
        let (_, g) = build_by_name(name).unwrap();
        for m in 1..=6usize {
            checks += 1;
            let verdict = theorem_dispatch(name, m);
            match verdict {
                TheoremVerdict::OutOfCatalog => {
                    failures.push(format!("({name}, m={m}): dispatcher says out of catalog"));
                }
                TheoremVerdict::AdmitsOmsr { construction } => {
                    let Some(id) = construction else {
                        failures.push(format!("({name}, m={m}): no construction materialized"));
                        continue;
                    };
                    let c = construct(&id).unwrap();
                    let verdict = check_omsr(&c.group, &c.sets).unwrap();
                    if !verdict.is_omsr {
                        failures.push(format!(
                            "({name}, m={m}): dispatcher promises a representation but {id} \
                             verifies false (aut_order={})",
                            verdict.aut_order
                        ));
                    }
                }
                TheoremVerdict::NoOmsrByTheorem { .. } => {
                    // Direct refutation: exhaustive search.
                    if m == 1 {
                        let cert = find_orr(&g, name).unwrap();
                        if cert.kind != CertificateKind::OrrNonexistence {
                            failures.push(format!(
                                "({name}, m=1): dispatcher says none, search found {:?}",
                                cert.witness_words
                            ));
                        }
                    } else {
                        let mut space = SearchSpace::new(g.clone(), name, m);
                        space.reductions.group_automorphism_orbits = true;
                        let cert = run_search(&space).unwrap();
                        if cert.kind != CertificateKind::Nonexistence {
                            failures.push(format!(
                                "({name}, m={m}): dispatcher says none, search disagrees"
                            ));
                        }
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        println!(
            "criterion 9 (dispatcher agreement): PASS ({checks} cells over {} groups)",
            small.len()
        );
    } else {
        println!("criterion 9 (dispatcher agreement): FAIL ({} cells)", failures.len());
        for f in &failures {
            println!("  {f}");
        }
        panic!("criterion 9 failed");
    }
}

/// The valency-cap search interface, exercised at the documented spots.
#[test]
fn capped_searches_behave() {
    let cert = find_omsr(&SearchSpace::new(cyclic(1), "Z1", 6), 2).unwrap();
    assert_eq!(cert.kind, CertificateKind::Nonexistence);
    let cert = find_omsr(&SearchSpace::new(cyclic(2), "Z2", 4), 2).unwrap();
    assert_eq!(cert.kind, CertificateKind::OmsrWitness);
    println!("capped searches: PASS");
}

/// Digraph-level confirmation of the empty cell in criteria 1 and 9: an
/// order-2 representation on three parts would be a 6-vertex oriented
/// regular digraph whose automorphism group is exactly {identity, one
/// fixed-point-free involution}. Enumerating ALL such digraphs (no
/// group structure assumed) finds none.
#[test]
fn no_six_vertex_digraph_realizes_the_order_two_group_on_three_parts() {
    let n = 6usize;
    let perms = permutations(n);
    let mut hits = 0u64;
    let mut scanned = 0u64;
    // Regular of valency d: out-sets per row, chosen with column budgets.
    for d in 0..=2usize {
        let mut rows: Vec<u8> = Vec::with_capacity(n);
        let mut col = vec![0usize; n];
        fn rec(
            n: usize,
            d: usize,
            rows: &mut Vec<u8>,
            col: &mut Vec<usize>,
            perms: &[Vec<usize>],
            hits: &mut u64,
            scanned: &mut u64,
        ) {
            if rows.len() == n {
                if col.iter().any(|&c| c != d) {
                    return;
                }
                // Assemble the arc mask; reject digons.
                let mut arcs = 0u64;
                for (u, row) in rows.iter().enumerate() {
                    for v in 0..n {
                        if row >> v & 1 == 1 {
                            arcs |= 1u64 << (u * n + v);
                        }
                    }
                }
                for u in 0..n {
                    for v in u + 1..n {
                        if arcs >> (u * n + v) & 1 == 1 && arcs >> (v * n + u) & 1 == 1 {
                            return;
                        }
                    }
                }
                *scanned += 1;
                // Full automorphism group by brute force.
                let mut autos = Vec::new();
                for p in perms {
                    let mut image = 0u64;
                    let mut bits = arcs;
                    while bits != 0 {
                        let k = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        image |= 1u64 << (p[k / n] * n + p[k % n]);
                    }
                    if image == arcs {
                        autos.push(p);
                    }
                }
                if autos.len() == 2 {
                    let invol = if autos[0].iter().enumerate().all(|(i, &v)| i == v) {
                        autos[1]
                    } else {
                        autos[0]
                    };
                    if (0..n).all(|v| invol[v] != v) {
                        *hits += 1;
                    }
                }
                return;
            }
            let u = rows.len();
            // Choose an out-set of size d avoiding loops.
            let mut choice = vec![0usize; d];
            fn pick(
                n: usize,
                d: usize,
                u: usize,
                idx: usize,
                start: usize,
                choice: &mut Vec<usize>,
                rows: &mut Vec<u8>,
                col: &mut Vec<usize>,
                perms: &[Vec<usize>],
                hits: &mut u64,
                scanned: &mut u64,
            ) {
                if idx == d {
                    let mut row = 0u8;
                    for &v in choice.iter() {
                        row |= 1 << v;
                    }
                    rows.push(row);
                    for &v in choice.iter() {
                        col[v] += 1;
                    }
                    rec(n, d, rows, col, perms, hits, scanned);
                    for &v in choice.iter() {
                        col[v] -= 1;
                    }
                    rows.pop();
                    return;
                }
                for v in start..n {
                    if v == u || col[v] >= d {
                        continue;
                    }
                    choice[idx] = v;
                    pick(n, d, u, idx + 1, v + 1, choice, rows, col, perms, hits, scanned);
                }
            }
            pick(n, d, u, 0, 0, &mut choice, rows, col, perms, hits, scanned);
        }
        rec(n, d, &mut rows, &mut col, &perms, &mut hits, &mut scanned);
    }
    // 1 + 160 + 570 digraphs across the three valencies; the trivial-group
    // search space at six parts reports the same count independently.
    assert_eq!(scanned, 731, "not the full space");
    assert_eq!(
        hits, 0,
        "a 6-vertex witness exists after all; the documented empty cell is wrong"
    );
    println!(
        "order-2 group on three parts: no witness among {scanned} oriented regular digraphs"
    );
}
