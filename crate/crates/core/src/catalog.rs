//! The group catalog: canonical names, construction recipes, JSON schema
//! and the structural classification that drives the final dispatcher.
//!
//! Catalog names: `Z<n>`, `Z<p>^<k>`, products joined with `x`
//! (`Z4xZ2^2`), `GD(<name>)` for generalized dihedral doubles, and the
//! special names `Q8`, `H1`, `H2`, `H3`, `D4oD4`.

use crate::group::{
    central_product_d4_d4, coset_enumerate, cyclic, direct_product, elementary_abelian_2,
    generalized_dihedral, Elem, FiniteGroup, GroupError, Presentation,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown group name {0:?}; known names include {1}")]
    UnknownName(String, String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Construction recipe for a catalog group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { n: usize },
    ElemAbelian2 { n: usize },
    DirectProduct { factors: Vec<GroupSpec> },
    GenDihedral { inner: Box<GroupSpec> },
    Presentation { generators: Vec<String>, relators: Vec<String>, order: usize },
    CentralProduct,
}

/// A resolved catalog entry: normative name plus recipe.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
}

impl CatalogEntry {
    /// Catalog file schema: `{name, kind, parameters, relators?}`.
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(&self.spec).expect("spec serializes");
        let obj = v.as_object_mut().unwrap();
        let kind = obj.remove("kind").unwrap();
        let relators = obj.remove("relators");
        let mut out = json!({
            "name": self.name,
            "kind": kind,
            "parameters": Value::Object(obj.clone()),
        });
        if let Some(r) = relators {
            out.as_object_mut().unwrap().insert("relators".into(), r);
        }
        out
    }
}

/// Names shown in usage errors and exercised by the dispatcher tests.
pub const CATALOG_NAMES: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2^2", "Z2^3", "Z2^4", "Z2^5", "Z2^6",
    "Z3^2", "Q8", "Z4xZ2", "Z4xZ2^2", "Z4xZ2^3", "Z4xZ2^4", "Z3xZ2^3", "H1", "H2", "H3",
    "D4oD4", "GD(Z3)", "GD(Z4)", "GD(Z5)", "GD(Z3^2)", "GD(Z4xZ2)", "GD(Z4xZ2^2)",
    "GD(Z3xZ2^3)", "GD(Z4xZ2^3)", "GD(Z4xZ2^4)",
];

fn h1_spec() -> GroupSpec {
    GroupSpec::Presentation {
        generators: vec!["x".into(), "y".into()],
        relators: vec!["x^4".into(), "y^4".into(), "(xy)^2".into(), "(xy^-1)^2".into()],
        order: 16,
    }
}

fn h2_spec() -> GroupSpec {
    GroupSpec::Presentation {
        generators: vec!["x".into(), "y".into(), "z".into()],
        relators: vec![
            "x^4".into(),
            "y^4".into(),
            "z^4".into(),
            "(yx)^2".into(),
            "(yx^-1)^2".into(),
            "(yz)^2".into(),
            "(yz^-1)^2".into(),
            "x^2y^-2".into(),
            "y^2z^-2".into(),
            "z^-1xzx".into(),
        ],
        order: 16,
    }
}

fn h3_spec() -> GroupSpec {
    GroupSpec::Presentation {
        generators: vec!["x".into(), "y".into(), "z".into()],
        relators: vec![
            "x^4".into(),
            "y^4".into(),
            "z^4".into(),
            "(xy)^2".into(),
            "(xy^-1)^2".into(),
            "(xz)^2".into(),
            "(xz^-1)^2".into(),
            "(yz)^2".into(),
            "(yz^-1)^2".into(),
            "x^2y^2z^2".into(),
        ],
        order: 32,
    }
}

fn q8_spec() -> GroupSpec {
    GroupSpec::Presentation {
        generators: vec!["x".into(), "y".into()],
        relators: vec!["x^4".into(), "y^4".into(), "x^2y^-2".into(), "y^-1xyx".into()],
        order: 8,
    }
}

/// Parses a catalog name into an entry.
pub fn resolve(name: &str) -> Result<CatalogEntry, CatalogError> {
    let spec = parse_name(name.trim())?;
    Ok(CatalogEntry { name: name.trim().to_string(), spec })
}

fn parse_name(name: &str) -> Result<GroupSpec, CatalogError> {
    let unknown = || {
        CatalogError::UnknownName(
            name.to_string(),
            CATALOG_NAMES.join(", "),
        )
    };
    if let Some(inner) = name.strip_prefix("GD(").and_then(|s| s.strip_suffix(')')) {
        return Ok(GroupSpec::GenDihedral { inner: Box::new(parse_name(inner)?) });
    }
    match name {
        "Q8" => return Ok(q8_spec()),
        "H1" => return Ok(h1_spec()),
        "H2" => return Ok(h2_spec()),
        "H3" => return Ok(h3_spec()),
        "D4oD4" => return Ok(GroupSpec::CentralProduct),
        _ => {}
    }
    // Product of atoms "Z<a>" or "Z<a>^<k>" joined by 'x'.
    let mut factors = Vec::new();
    for atom in name.split('x') {
        let rest = atom.strip_prefix('Z').ok_or_else(unknown)?;
        let (base, exp) = match rest.split_once('^') {
            Some((b, e)) => (
                b.parse::<usize>().map_err(|_| unknown())?,
                e.parse::<usize>().map_err(|_| unknown())?,
            ),
            None => (rest.parse::<usize>().map_err(|_| unknown())?, 1),
        };
        if base == 0 || exp == 0 {
            return Err(unknown());
        }
        if base == 2 {
            factors.push(GroupSpec::ElemAbelian2 { n: exp });
        } else {
            for _ in 0..exp {
                factors.push(GroupSpec::Cyclic { n: base });
            }
        }
    }
    match factors.len() {
        0 => Err(unknown()),
        1 => Ok(factors.pop().unwrap()),
        _ => Ok(GroupSpec::DirectProduct { factors }),
    }
}

/// Builds the multiplication table for a recipe, with canonical generator
/// labels (`x`, then `y`, `z`, `w`, `u` across product factors).
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, CatalogError> {
    let g = match spec {
        GroupSpec::Cyclic { n } => cyclic(*n),
        GroupSpec::ElemAbelian2 { n } => elementary_abelian_2(*n),
        GroupSpec::DirectProduct { factors } => {
            let built: Vec<FiniteGroup> =
                factors.iter().map(build_group).collect::<Result<_, _>>()?;
            let mut acc = built[0].clone();
            for f in &built[1..] {
                acc = direct_product(&acc, f)?;
            }
            relabel_product(acc)?
        }
        GroupSpec::GenDihedral { inner } => {
            let h = build_group(inner)?;
            generalized_dihedral(&h)?
        }
        GroupSpec::Presentation { generators, relators, order } => {
            let gen_refs: Vec<&str> = generators.iter().map(|s| s.as_str()).collect();
            let rel_refs: Vec<&str> = relators.iter().map(|s| s.as_str()).collect();
            let p = Presentation::parse(&gen_refs, &rel_refs)?;
            coset_enumerate(&p, *order)?
        }
        GroupSpec::CentralProduct => central_product_d4_d4(),
    };
    Ok(g)
}

/// After a product chain the labels carry primes (`x`, `x'`, ...); rename
/// them to the conventional letter sequence.
fn relabel_product(g: FiniteGroup) -> Result<FiniteGroup, CatalogError> {
    const LETTERS: [&str; 5] = ["x", "y", "z", "w", "u"];
    let old: Vec<(String, Elem)> = g.labels().to_vec();
    if old.len() > LETTERS.len() {
        return Ok(g);
    }
    let labels = old
        .iter()
        .enumerate()
        .map(|(i, (_, e))| (LETTERS[i].to_string(), *e))
        .collect();
    Ok(g.relabel(labels)?)
}

pub fn build_by_name(name: &str) -> Result<(CatalogEntry, FiniteGroup), CatalogError> {
    let entry = resolve(name)?;
    let g = build_group(&entry.spec)?;
    Ok((entry, g))
}

// ---------------------------------------------------------------------------
// Classification against the families of the classification theorem
// ---------------------------------------------------------------------------

/// Where a group falls in the existence classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremClass {
    /// The trivial group.
    Trivial,
    /// Elementary abelian 2-group of rank `n >= 1`.
    ElemAbelian2 { n: usize },
    /// One of the eleven exceptional groups without an oriented regular
    /// representation; `item` indexes the construction family (1-based).
    Exceptional { item: usize },
    /// Non-abelian generalized dihedral whose base group has no oriented
    /// regular representation; `family` indexes the six base groups.
    GenDihedralNoOrr { family: usize },
    /// Non-abelian generalized dihedral whose base group admits an
    /// oriented regular representation.
    GenDihedralOrr,
    /// Everything else: the group admits an oriented regular
    /// representation.
    AdmitsOrr,
}

/// The exceptional groups in construction-family order.
pub const EXCEPTIONAL_NAMES: [&str; 11] = [
    "Z4xZ2", "Q8", "Z3^2", "Z4xZ2^2", "Z3xZ2^3", "Z4xZ2^3", "Z4xZ2^4", "H1", "H2", "H3",
    "D4oD4",
];

/// Base groups of the six generalized dihedral construction families.
pub const GD_NOORR_BASE_NAMES: [&str; 6] =
    ["Z4xZ2", "Z3^2", "Z4xZ2^2", "Z3xZ2^3", "Z4xZ2^3", "Z4xZ2^4"];

/// Classifies a group structurally (order at most 128, as everywhere).
pub fn classify(g: &FiniteGroup) -> TheoremClass {
    if g.order() == 1 {
        return TheoremClass::Trivial;
    }
    if g.exponent() == 2 {
        let n = g.order().trailing_zeros() as usize;
        return TheoremClass::ElemAbelian2 { n };
    }
    for (i, name) in EXCEPTIONAL_NAMES.iter().enumerate() {
        let (_, canonical) = build_by_name(name).expect("builtin catalog name");
        if g.order() == canonical.order() && g.isomorphic(&canonical) {
            return TheoremClass::Exceptional { item: i + 1 };
        }
    }
    if let Some((h_elems, _b)) = g.generalized_dihedral_split() {
        let h = subgroup_as_group(g, &h_elems);
        for (i, name) in GD_NOORR_BASE_NAMES.iter().enumerate() {
            let (_, canonical) = build_by_name(name).expect("builtin catalog name");
            if h.order() == canonical.order() && h.isomorphic(&canonical) {
                return TheoremClass::GenDihedralNoOrr { family: i + 1 };
            }
        }
        return TheoremClass::GenDihedralOrr;
    }
    TheoremClass::AdmitsOrr
}

/// Extracts the induced multiplication table of a subgroup (its identity
/// must be the group identity, index 0 after re-indexing).
fn subgroup_as_group(g: &FiniteGroup, elems: &[Elem]) -> FiniteGroup {
    let order = elems.len();
    let pos = |e: Elem| elems.iter().position(|&x| x == e).expect("closed subgroup") as u16;
    let mut mul = vec![0u16; order * order];
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            mul[i * order + j] = pos(g.mul(a, b));
        }
    }
    // Greedy generating sequence: repeatedly add the least element outside
    // the closure so far.
    let mut gens: Vec<Elem> = Vec::new();
    loop {
        let closure = closure_of(&mul, order, &gens);
        match (0..order as u16).map(Elem).find(|e| !closure.contains(e)) {
            Some(next) => gens.push(next),
            None => break,
        }
    }
    let labels = gens
        .iter()
        .enumerate()
        .map(|(k, &e)| (format!("g{}", k + 1), e))
        .collect();
    FiniteGroup::from_table(mul, labels).expect("induced subgroup table")
}

fn closure_of(mul: &[u16], order: usize, gens: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; order];
    seen[0] = true;
    let mut out = vec![Elem(0)];
    let mut head = 0;
    while head < out.len() {
        let a = out[head];
        head += 1;
        for &g in gens {
            let b = Elem(mul[a.idx() * order + g.idx()]);
            if !seen[b.idx()] {
                seen[b.idx()] = true;
                out.push(b);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::quaternion;

    #[test]
    fn resolve_and_build_names() {
        let (_, z16) = build_by_name("Z2^4").unwrap();
        assert_eq!(z16.order(), 16);
        let (_, gd) = build_by_name("GD(Z3^2)").unwrap();
        assert_eq!(gd.order(), 18);
        let (_, q8) = build_by_name("Q8").unwrap();
        assert_eq!(q8.order(), 8);
        assert!(q8.isomorphic(&quaternion()));
        let (_, h) = build_by_name("Z4xZ2^2").unwrap();
        assert_eq!(h.order(), 16);
        assert!(h.label("x").is_some() && h.label("z").is_some());
        assert!(build_by_name("Zq").is_err());
    }

    #[test]
    fn presentation_orders_match_annotations() {
        let (_, h1) = build_by_name("H1").unwrap();
        assert_eq!(h1.order(), 16);
        let (_, h2) = build_by_name("H2").unwrap();
        assert_eq!(h2.order(), 16);
        let (_, h3) = build_by_name("H3").unwrap();
        assert_eq!(h3.order(), 32);
        let (_, dd) = build_by_name("D4oD4").unwrap();
        assert_eq!(dd.order(), 32);
    }

    #[test]
    fn classify_families() {
        let g = |n: &str| build_by_name(n).unwrap().1;
        assert_eq!(classify(&g("Z1")), TheoremClass::Trivial);
        assert_eq!(classify(&g("Z2")), TheoremClass::ElemAbelian2 { n: 1 });
        assert_eq!(classify(&g("Z2^4")), TheoremClass::ElemAbelian2 { n: 4 });
        assert_eq!(classify(&g("GD(Z2^3)")), TheoremClass::ElemAbelian2 { n: 4 });
        assert_eq!(classify(&g("Z5")), TheoremClass::AdmitsOrr);
        assert_eq!(classify(&g("Q8")), TheoremClass::Exceptional { item: 2 });
        assert_eq!(classify(&g("Z4xZ2")), TheoremClass::Exceptional { item: 1 });
        assert_eq!(classify(&g("H1")), TheoremClass::Exceptional { item: 8 });
        assert_eq!(classify(&g("D4oD4")), TheoremClass::Exceptional { item: 11 });
        assert_eq!(classify(&g("GD(Z3)")), TheoremClass::GenDihedralOrr);
        assert_eq!(classify(&g("GD(Z4xZ2)")), TheoremClass::GenDihedralNoOrr { family: 1 });
        assert_eq!(classify(&g("GD(Z4xZ2^4)")), TheoremClass::GenDihedralNoOrr { family: 6 });
    }

    #[test]
    fn catalog_json_schema() {
        let entry = resolve("GD(Z4xZ2)").unwrap();
        let v = entry.to_json();
        assert_eq!(v["kind"], "gen_dihedral");
        assert_eq!(v["name"], "GD(Z4xZ2)");
        let h1 = resolve("H1").unwrap().to_json();
        assert_eq!(h1["kind"], "presentation");
        assert!(h1["relators"].as_array().unwrap().len() == 4);
    }
}
