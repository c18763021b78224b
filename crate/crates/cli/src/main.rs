//! Command-line front door for the representation toolkit.
//!
//! Subcommands: `build`, `verify`, `search`, `claims`, `theorem`,
//! `export-dot`. Exit codes are stable: 0 success/verified, 1
//! verified-false, 2 usage error, 3 search budget exhausted.

use clap::{Args, Parser, Subcommand};
use omsr_core::aut::check_omsr;
use omsr_core::catalog;
use omsr_core::cert::write_atomic;
use omsr_core::constructions::{
    claim_gendihedral, claim_orr_lift, construct, Construction,
    ConstructionId, TheoremVerdict,
};
use omsr_core::group::{Elem, ElemSet, FiniteGroup};
use omsr_core::mcayley::{build, ConnectionSets};
use omsr_core::search::{run_search, Reductions, SearchError, SearchSpace};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "omsr",
    about = "Construct, verify and search oriented semiregular representations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and emit its connection sets and digraph.
    Build(BuildArgs),
    /// Build a construction and decide whether it is a representation.
    Verify(VerifyArgs),
    /// Exhaustively search a (group, m) space for a witness.
    Search(SearchArgs),
    /// Evaluate the arc-count claims of a lift construction.
    Claims(ClaimsArgs),
    /// Report which classification branch applies to (group, m).
    Theorem(TheoremArgs),
    /// Emit Graphviz DOT text for a construction.
    ExportDot(BuildArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Construction id, e.g. "z2_small:n=3,m=12" or "orr_lift:G=Z5,R=x,m=6".
    #[arg(long)]
    construction: String,
    /// Output file (stdout when absent). Writes are atomic.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Construction id to verify.
    #[arg(long, conflicts_with = "sets")]
    construction: Option<String>,
    /// Connection-set JSON file to verify instead.
    #[arg(long, requires = "group")]
    sets: Option<PathBuf>,
    /// Catalog group name for --sets.
    #[arg(long)]
    group: Option<String>,
    /// Emit the verdict as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Catalog group name.
    #[arg(long)]
    group: String,
    /// Number of parts.
    #[arg(long)]
    m: usize,
    /// Restrict the valency to at most this value.
    #[arg(long)]
    valency_cap: Option<usize>,
    /// Candidate budget.
    #[arg(long)]
    max_candidates: Option<u64>,
    /// Worker threads (results are deterministic regardless).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Disable all symmetry reductions.
    #[arg(long)]
    no_reductions: bool,
    /// Directory for the content-addressed certificate.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the certificate to stdout as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClaimsArgs {
    /// A lift construction id ("orr_lift:.." or "gendihedral_orr:..").
    #[arg(long)]
    construction: String,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TheoremArgs {
    /// Catalog group name.
    #[arg(long)]
    group: String,
    /// Number of parts.
    #[arg(long)]
    m: usize,
    /// Emit the verdict as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Build(args) => cmd_build(args, false),
        Command::ExportDot(args) => cmd_build(args, true),
        Command::Verify(args) => cmd_verify(args),
        Command::Search(args) => cmd_search(args),
        Command::Claims(args) => cmd_claims(args),
        Command::Theorem(args) => cmd_theorem(args),
    };
    ExitCode::from(code)
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    eprintln!("known groups: {}", catalog::CATALOG_NAMES.join(", "));
    EXIT_USAGE
}

fn parse_construction(text: &str) -> Result<Construction, u8> {
    let id: ConstructionId = text.parse().map_err(|e| usage_error(&format!("{e}")))?;
    construct(&id).map_err(|e| usage_error(&format!("{e}")))
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> u8 {
    match out {
        Some(path) => match write_atomic(path, bytes) {
            Ok(()) => {
                println!("{}", path.display());
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_USAGE
            }
        },
        None => {
            let mut stdout = std::io::stdout().lock();
            use std::io::Write;
            stdout.write_all(bytes).expect("stdout");
            EXIT_OK
        }
    }
}

fn cmd_build(args: BuildArgs, dot: bool) -> u8 {
    let c = match parse_construction(&args.construction) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let built = match build(&c.group, &c.sets) {
        Ok(b) => b,
        Err(e) => return usage_error(&format!("{e}")),
    };
    if dot {
        let text = built.digraph.to_dot(&built.labels(&c.group));
        return emit(&args.out, text.as_bytes());
    }
    let mut payload = json!({
        "connection_sets": c.sets.to_json(&c.group, &c.group_name),
        "digraph": {
            "n": built.digraph.vertex_count(),
            "arcs": built.digraph.arcs().collect::<Vec<_>>(),
        },
    });
    if let Ok(entry) = catalog::resolve(&c.group_name) {
        payload["group"] = entry.to_json();
    }
    let mut bytes = serde_json::to_vec_pretty(&payload).expect("serializable");
    bytes.push(b'\n');
    emit(&args.out, &bytes)
}

fn load_sets(path: &PathBuf, g: &FiniteGroup) -> Result<ConnectionSets, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_error(&format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage_error(&format!("{e}")))?;
    ConnectionSets::from_json(&value, g).map_err(|e| usage_error(&format!("{e}")))
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let (group_name, group, sets) = if let Some(text) = &args.construction {
        let c = match parse_construction(text) {
            Ok(c) => c,
            Err(code) => return code,
        };
        (c.group_name, c.group, c.sets)
    } else if let (Some(path), Some(name)) = (&args.sets, &args.group) {
        let (entry, g) = match catalog::build_by_name(name) {
            Ok(x) => x,
            Err(e) => return usage_error(&format!("{e}")),
        };
        let sets = match load_sets(path, &g) {
            Ok(s) => s,
            Err(code) => return code,
        };
        (entry.name, g, sets)
    } else {
        return usage_error("verify needs --construction or --sets with --group");
    };
    let verdict = match check_omsr(&group, &sets) {
        Ok(v) => v,
        Err(e) => return usage_error(&format!("{e}")),
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "group": group_name,
                "m": sets.m(),
                "verdict": verdict,
            }))
            .expect("serializable")
        );
    } else {
        println!(
            "{}: m={} oriented={} valency={:?} aut_order={} orbits={} -> {}",
            group_name,
            sets.m(),
            verdict.oriented,
            verdict.valency,
            verdict.aut_order,
            verdict.orbit_count,
            if verdict.is_omsr { "representation" } else { "NOT a representation" }
        );
    }
    if verdict.is_omsr {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn cmd_search(args: SearchArgs) -> u8 {
    let (entry, group) = match catalog::build_by_name(&args.group) {
        Ok(x) => x,
        Err(e) => return usage_error(&format!("{e}")),
    };
    if args.m == 0 {
        return usage_error("m must be at least 1");
    }
    let cert = if args.m == 1 {
        match omsr_core::search::find_orr(&group, &entry.name) {
            Ok(c) => c,
            Err(e) => return usage_error(&format!("{e}")),
        }
    } else {
        let mut space = SearchSpace::new(group, &entry.name, args.m);
        space.valency_range = args.valency_cap.map(|cap| (0, cap));
        space.workers = args.workers;
        if let Some(b) = args.max_candidates {
            space.budget.max_candidates = b;
        }
        space.reductions = if args.no_reductions {
            Reductions::default()
        } else {
            Reductions { group_automorphism_orbits: true, part_symmetry: false }
        };
        match run_search(&space) {
            Ok(c) => c,
            Err(SearchError::BudgetExceeded { examined }) => {
                eprintln!("error: candidate budget exhausted after {examined} candidates");
                return EXIT_BUDGET;
            }
            Err(e) => return usage_error(&format!("{e}")),
        }
    };
    if let Some(dir) = &args.out {
        match cert.write_atomic(dir) {
            Ok(path) => eprintln!("certificate: {}", path.display()),
            Err(e) => return usage_error(&format!("cannot write certificate: {e}")),
        }
    }
    if args.json {
        println!("{}", String::from_utf8_lossy(&cert.canonical_bytes()));
    } else {
        println!(
            "{}: m={} -> {:?} ({} candidates examined, {} ms)",
            cert.group,
            cert.m,
            cert.kind,
            cert.candidates_examined,
            cert.wall_time_ms.unwrap_or(0)
        );
    }
    EXIT_OK
}

fn cmd_claims(args: ClaimsArgs) -> u8 {
    let id: ConstructionId = match args.construction.parse() {
        Ok(id) => id,
        Err(e) => return usage_error(&format!("{e}")),
    };
    let report = match &id {
        ConstructionId::OrrLift { group, r, a, m } => {
            let Ok((_, g)) = catalog::build_by_name(group) else {
                return usage_error("unknown group");
            };
            let Ok(set) = resolve_words(&g, r) else {
                return usage_error("bad word in R");
            };
            let a = match pick(&g, &set, a) {
                Ok(a) => a,
                Err(code) => return code,
            };
            claim_orr_lift(&g, &set, a, *m)
        }
        ConstructionId::GenDihedralOrr { h, r, a, m } => {
            let Ok((_, hg)) = catalog::build_by_name(h) else {
                return usage_error("unknown group");
            };
            let Ok(set) = resolve_words(&hg, r) else {
                return usage_error("bad word in R");
            };
            let a = match pick(&hg, &set, a) {
                Ok(a) => a,
                Err(code) => return code,
            };
            claim_gendihedral(&hg, &set, a, *m)
        }
        _ => return usage_error("claims apply to orr_lift and gendihedral_orr constructions"),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return usage_error(&format!("{e}")),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!("k = {}", report.k);
        for (part, want) in &report.expected {
            let got = report.measured[part];
            println!(
                "part {part}: measured {got}, predicted {want} {}",
                if got == *want { "ok" } else { "MISMATCH" }
            );
        }
    }
    if report.matches() {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn resolve_words(g: &FiniteGroup, words: &[String]) -> Result<ElemSet, ()> {
    let refs: Vec<&str> = words.iter().map(|w| w.as_str()).collect();
    g.set_from_words(&refs).map_err(|_| ())
}

fn pick(g: &FiniteGroup, r: &ElemSet, a: &Option<String>) -> Result<Elem, u8> {
    match a {
        Some(w) => g.element_from_word(w).map_err(|e| usage_error(&format!("{e}"))),
        None => r.iter().next().ok_or_else(|| usage_error("R must be non-empty")),
    }
}

fn cmd_theorem(args: TheoremArgs) -> u8 {
    if args.m == 0 {
        return usage_error("m must be at least 1");
    }
    let verdict = omsr_core::constructions::theorem_dispatch(&args.group, args.m);
    match &verdict {
        TheoremVerdict::OutOfCatalog => {
            return usage_error(&format!("{:?} is not a catalog group", args.group))
        }
        TheoremVerdict::AdmitsOmsr { construction } => {
            if args.json {
                println!(
                    "{}",
                    json!({
                        "group": args.group,
                        "m": args.m,
                        "branch": 1,
                        "construction": construction.as_ref().map(|c| c.to_string()),
                    })
                );
            } else {
                println!("branch (1): admits a representation");
                if let Some(c) = construction {
                    println!("construction: {c}");
                }
            }
        }
        TheoremVerdict::NoOmsrByTheorem { branch } => {
            if args.json {
                println!(
                    "{}",
                    json!({"group": args.group, "m": args.m, "branch": branch})
                );
            } else {
                println!("branch ({branch}): no representation exists for this pair");
            }
        }
    }
    EXIT_OK
}
