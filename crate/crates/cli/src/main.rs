//! `tli`: validate surface knot diagrams and print their invariants.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use tli_core::coloring::{brute_force_colorings, coloring_group, coloring_system, module_order};
use tli_core::fox::{jacobian, specialize, Specialization};
use tli_core::group::{dehn, quotient_presentation, surface_relators, wirtinger};
use tli_core::invariants::{differences, invariant_block, InvariantBlock};
use tli_core::laurent::var_names;
use tli_core::reidemeister::{apply_move, enumerate_sites, fuzz, sites_of_kind, MoveKind};
use tli_core::smith::SmithNormalForm;
use tli_core::tait::{dual_tait, elimination_matches, laplacian, laplacian_group, laplacian_polynomial, tait_graph};
use tli_core::{fixtures, Error, IntMatrix, LaurentMatrix, SurfaceDiagram};

use report::Report;

const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser)]
#[command(name = "tli", version, about = "Invariants of knot diagrams on closed orientable surfaces")]
struct Cli {
    /// Emit the report as JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a diagram file and print its basic counts.
    Validate { file: PathBuf },
    /// Counts, faces, components, writhe and shadability.
    Info { file: PathBuf },
    /// Wirtinger presentation, one generator per arc.
    Wirtinger {
        file: PathBuf,
        /// Also print a Tietze-simplified presentation.
        #[arg(long)]
        simplify: bool,
    },
    /// Dehn presentation, one generator per face.
    Dehn {
        file: PathBuf,
        /// Leave out the base-face relator.
        #[arg(long)]
        no_base: bool,
    },
    /// Images of the surface relators and the quotient group.
    SurfaceRelators { file: PathBuf },
    /// Fox Jacobian of the Wirtinger presentation and its specializations.
    Fox { file: PathBuf },
    /// Coloring relations, their Smith form and the module order.
    Coloring {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        /// Also count colorings by enumeration (small diagrams only).
        #[arg(long)]
        brute: bool,
    },
    /// Both Tait graphs as edge lists.
    Tait { file: PathBuf },
    /// Laplacians of both Tait graphs.
    Laplacian {
        file: PathBuf,
        /// Print only the normalized determinants.
        #[arg(long)]
        poly: bool,
    },
    /// List move sites, apply one, or run a seeded invariance fuzz.
    Moves {
        file: PathBuf,
        /// Move kind: r1+, r1-, r2+, r2- or r3.
        #[arg(long, requires = "site", conflicts_with = "fuzz")]
        apply: Option<String>,
        /// Index among the sites of the chosen kind.
        #[arg(long, requires = "apply")]
        site: Option<usize>,
        /// Number of random move sequences.
        #[arg(long)]
        fuzz: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        /// Write the moved diagram here.
        #[arg(long, requires = "apply")]
        out: Option<PathBuf>,
    },
    /// The invariant block compared across moves.
    Invariants {
        file: PathBuf,
        /// Include the coloring and Laplacian entries.
        #[arg(long)]
        all: bool,
    },
    /// Which invariants of two diagrams differ.
    Compare { a: PathBuf, b: PathBuf },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Out = std::result::Result<Report, Failure>;

/// Reads a diagram file. A missing path that names a shipped fixture
/// (with or without `.json`) loads the fixture.
fn load(path: &Path) -> std::result::Result<SurfaceDiagram, Failure> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let stem = path.to_string_lossy();
            let stem = stem.strip_suffix(".json").unwrap_or(&stem);
            match fixtures::source(stem) {
                Some(t) if !path.exists() => t.to_string(),
                _ => return Err(Failure::Input(format!("{}: {e}", path.display()))),
            }
        }
    };
    Ok(SurfaceDiagram::from_json(&text)?)
}

fn int_cells(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn laurent_cells(m: &LaurentMatrix, names: &[String]) -> Vec<Vec<String>> {
    m.entries().to_rows().iter().map(|r| r.iter().map(|p| p.to_string_with(names)).collect()).collect()
}

fn snf_fields(r: &mut Report, key: &str, snf: &SmithNormalForm) {
    r.text(key, snf.cokernel());
    r.text(&format!("{key} invariant factors"), join(&snf.invariant_factors, " "));
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn header(r: &mut Report, d: &SurfaceDiagram) {
    r.text("name", d.name());
    r.text("genus", d.genus());
    r.text("crossings", d.crossings().len());
    r.text("edges", d.edges().len());
    r.text("faces", d.faces().len());
}

fn validate(file: &Path) -> Out {
    let d = load(file)?;
    let mut r = Report::new("validate");
    r.text("status", "valid");
    header(&mut r, &d);
    Ok(r)
}

fn info(file: &Path) -> Out {
    let d = load(file)?;
    let mut r = Report::new("info");
    header(&mut r, &d);
    r.text("components", d.components().len());
    r.text("writhe", d.crossings().iter().map(|c| c.sign()).sum::<i32>());
    r.text("shadable", d.checkerboard_shade().is_ok());
    r.lines(
        "crossing ids",
        d.crossings().iter().enumerate().map(|(i, c)| format!("{i}: id {} sign {:+}", c.id, c.sign())),
    );
    r.lines(
        "faces",
        d.faces().iter().map(|f| {
            let cs: Vec<String> = f.corners.iter().map(|k| format!("({},{})", k.crossing, k.slot)).collect();
            format!("{}: {}", f.id, cs.join(" "))
        }),
    );
    Ok(r)
}

fn wirtinger_cmd(file: &Path, simplify: bool) -> Out {
    let d = load(file)?;
    let p = wirtinger(&d);
    let mut r = Report::new("wirtinger");
    r.text("presentation", &p);
    if simplify {
        r.text("simplified", p.tietze_simplify());
    }
    snf_fields(&mut r, "abelianization", &p.abelianization());
    Ok(r)
}

fn dehn_cmd(file: &Path, no_base: bool) -> Out {
    let d = load(file)?;
    let p = dehn(&d, !no_base);
    let mut r = Report::new("dehn");
    r.text("with base relator", !no_base);
    r.text("presentation", &p);
    r.text("simplified", p.tietze_simplify());
    snf_fields(&mut r, "abelianization", &p.abelianization());
    Ok(r)
}

fn surface_relators_cmd(file: &Path) -> Out {
    let d = load(file)?;
    let mut r = Report::new("surface-relators");
    r.lines("relators", surface_relators(&d)?);
    let q = quotient_presentation(&d)?;
    r.text("quotient", &q);
    r.text("quotient simplified", q.tietze_simplify());
    snf_fields(&mut r, "quotient abelianization", &q.abelianization());
    Ok(r)
}

fn fox_cmd(file: &Path) -> Out {
    let d = load(file)?;
    let p = wirtinger(&d);
    let j = jacobian(&p);
    let mut r = Report::new("fox");
    r.text("presentation", &p);
    r.matrix("jacobian", j.to_rows().iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect());
    let t = ["t".to_string()];
    let jt = specialize(&j, &Specialization::to_t(&p.generators))?;
    r.matrix("generators to t", laurent_cells(&jt, &t));
    let jm = specialize(&j, &Specialization::to_minus_one(&p.generators))?;
    r.matrix("generators to -1", laurent_cells(&jm, &[]));
    let j1 = specialize(&j, &Specialization::to_one(&p.generators))?;
    let exps = p.exponent_matrix();
    r.matrix("generators to 1", laurent_cells(&j1, &[]));
    r.check("generators to 1 is the exponent matrix", j1.to_int().as_ref() == Some(&exps));
    if jt.cols() > 0 {
        let k = jt.cols() - 1;
        let delta = if k == 0 { tli_core::LaurentPoly::one(1) } else { jt.minors_gcd(k)?.unit_normalize() };
        r.text("gcd of maximal proper minors", delta.to_string_with(&t));
    }
    Ok(r)
}

fn coloring_cmd(file: &Path, primes: &[u64], brute: bool) -> Out {
    let d = load(file)?;
    let sh = d.checkerboard_shade()?;
    let cs = coloring_system(&d, &sh)?;
    let names = var_names(d.nvars());
    let mut r = Report::new("coloring");
    r.text("shaded faces", join(&sh.shaded_faces(), " "));
    r.text("generators", cs.generators.join(" "));
    r.lines("integer relations", cs.int_relations());
    r.lines("laurent relations", cs.laurent_relations(&names));
    r.matrix("integer matrix", int_cells(&cs.int));
    r.matrix("laurent matrix", laurent_cells(&cs.laurent, &names));
    let snf = coloring_group(&cs);
    snf_fields(&mut r, "coloring group", &snf);
    r.text("module order", module_order(&cs)?.to_string_with(&names));
    r.check("laurent matrix at 1 is the integer matrix", cs.laurent.eval_ones() == cs.int);
    for &p in primes {
        if p < 2 {
            return Err(Failure::Input(format!("not a prime: {p}")));
        }
        let count = snf.count_mod_p(p);
        r.text(&format!("colorings mod {p}"), &count);
        if brute {
            let b = brute_force_colorings(&cs, p)?;
            r.check(&format!("enumeration mod {p}"), count == b.into());
        }
    }
    Ok(r)
}

fn tait_cmd(file: &Path) -> Out {
    let d = load(file)?;
    let sh = d.checkerboard_shade()?;
    let g = tait_graph(&d, &sh)?;
    let h = dual_tait(&d, &sh)?;
    let mut r = Report::new("tait");
    r.text("G vertices", join(&g.faces, " "));
    r.lines("G edges", g.to_string().lines());
    r.text("G* vertices", join(&h.faces, " "));
    r.lines("G* edges", h.to_string().lines());
    Ok(r)
}

fn laplacian_cmd(file: &Path, poly: bool) -> Out {
    let d = load(file)?;
    let sh = d.checkerboard_shade()?;
    let names = var_names(d.nvars());
    let mut r = Report::new("laplacian");
    let mut polys = Vec::new();
    for (label, g) in [("G", tait_graph(&d, &sh)?), ("G*", dual_tait(&d, &sh)?)] {
        let ld = laplacian(&g);
        let p = laplacian_polynomial(&ld)?;
        if !poly {
            r.matrix(&format!("{label} laurent laplacian"), laurent_cells(&ld.laurent, &names));
            r.matrix(&format!("{label} integer laplacian"), int_cells(&ld.int));
            snf_fields(&mut r, &format!("{label} laplacian group"), &laplacian_group(&ld));
            r.check(&format!("{label} laplacian is bar-symmetric"), ld.laurent.bar().transpose() == ld.laurent);
        }
        r.text(&format!("Delta_{label}"), p.to_string_with(&names));
        polys.push(p);
    }
    r.text("equal up to units", polys[0] == polys[1]);
    if !poly {
        r.check("vertex elimination reproduces the coloring rows", elimination_matches(&d, &sh)?);
    }
    Ok(r)
}

fn moves_cmd(
    file: &Path,
    apply: Option<&str>,
    site: Option<usize>,
    count: Option<usize>,
    seed: u64,
    max_len: usize,
    out: Option<&Path>,
) -> Out {
    let d = load(file)?;
    if let (Some(kind), Some(idx)) = (apply, site) {
        let kind = MoveKind::parse(kind)?;
        let sites = sites_of_kind(&d, kind);
        let s = sites
            .get(idx)
            .ok_or_else(|| Failure::Input(format!("{kind} has {} sites, index {idx} is out of range", sites.len())))?;
        let moved = apply_move(&d, s)?;
        let json_text = moved.to_json();
        if let Some(path) = out {
            std::fs::write(path, &json_text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
        let mut r = Report::new("moves");
        r.text("move", s);
        header(&mut r, &moved);
        r.json("diagram", serde_json::from_str(&json_text).map_err(|e| Failure::Internal(e.to_string()))?);
        return Ok(r);
    }
    let mut r = Report::new("moves");
    if let Some(n) = count {
        if max_len == 0 {
            return Err(Failure::Input("--max-len must be positive".into()));
        }
        let before = invariant_block(&d)?;
        let runs = fuzz(&d, n, max_len, seed)?;
        r.text("seed", seed);
        r.text("sequences", n);
        let mut bad = 0;
        let mut lines = Vec::new();
        for (i, run) in runs.iter().enumerate() {
            let diff = differences(&before, &invariant_block(&run.result)?);
            let moves: Vec<String> = run.moves.iter().map(|m| m.kind().to_string()).collect();
            let verdict = if diff.is_empty() { "same".to_string() } else { format!("DIFFERS: {}", diff.join(", ")) };
            if !diff.is_empty() {
                bad += 1;
            }
            lines.push(format!("{i}: {} -> {} crossings, {verdict}", moves.join(" "), run.result.crossings().len()));
        }
        r.lines("runs", lines);
        r.check("invariants preserved", bad == 0);
        return Ok(r);
    }
    let sites = enumerate_sites(&d);
    for kind in [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3] {
        let of_kind: Vec<String> = sites
            .iter()
            .filter(|s| s.kind() == kind)
            .enumerate()
            .map(|(i, s)| format!("{i}: {s}"))
            .collect();
        r.lines(&kind.to_string(), of_kind);
    }
    Ok(r)
}

fn block_fields(r: &mut Report, prefix: &str, b: &InvariantBlock, all: bool) {
    r.text(&format!("{prefix}genus"), b.genus);
    r.text(&format!("{prefix}wirtinger abelianization"), &b.wirtinger);
    r.text(&format!("{prefix}dehn abelianization"), &b.dehn);
    r.text(&format!("{prefix}quotient abelianization"), &b.quotient);
    if all {
        r.text(&format!("{prefix}shadable"), b.shadable);
        let none = || "n/a".to_string();
        r.text(&format!("{prefix}coloring group"), b.coloring.as_ref().map_or_else(none, |c| c.to_string()));
        r.text(&format!("{prefix}module order"), b.module_order.clone().unwrap_or_else(none));
        match &b.laplacian_pair {
            Some(p) => r.lines(&format!("{prefix}laplacian polynomials"), p),
            None => r.text(&format!("{prefix}laplacian polynomials"), none()),
        }
    }
}

fn invariants_cmd(file: &Path, all: bool) -> Out {
    let d = load(file)?;
    let b = invariant_block(&d)?;
    let mut r = Report::new("invariants");
    r.text("name", d.name());
    block_fields(&mut r, "", &b, all);
    Ok(r)
}

fn compare_cmd(a: &Path, b: &Path) -> Out {
    let (da, db) = (load(a)?, load(b)?);
    let (ba, bb) = (invariant_block(&da)?, invariant_block(&db)?);
    let diff = differences(&ba, &bb);
    let mut r = Report::new("compare");
    r.text("a", da.name());
    r.text("b", db.name());
    r.text("distinguished", !diff.is_empty());
    r.lines("differences", diff);
    block_fields(&mut r, "a ", &ba, true);
    block_fields(&mut r, "b ", &bb, true);
    Ok(r)
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Validate { file } => validate(file),
        Cmd::Info { file } => info(file),
        Cmd::Wirtinger { file, simplify } => wirtinger_cmd(file, *simplify),
        Cmd::Dehn { file, no_base } => dehn_cmd(file, *no_base),
        Cmd::SurfaceRelators { file } => surface_relators_cmd(file),
        Cmd::Fox { file } => fox_cmd(file),
        Cmd::Coloring { file, primes, brute } => coloring_cmd(file, primes, *brute),
        Cmd::Tait { file } => tait_cmd(file),
        Cmd::Laplacian { file, poly } => laplacian_cmd(file, *poly),
        Cmd::Moves { file, apply, site, fuzz, seed, max_len, out } => {
            moves_cmd(file, apply.as_deref(), *site, *fuzz, *seed, *max_len, out.as_deref())
        }
        Cmd::Invariants { file, all } => invariants_cmd(file, *all),
        Cmd::Compare { a, b } => compare_cmd(a, b),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(64) } else { ExitCode::SUCCESS };
        }
    };
    let result = match std::panic::catch_unwind(|| run(&cli)) {
        Ok(r) => r,
        Err(_) => Err(Failure::Internal("panic".into())),
    };
    match result {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json values serialize"));
            } else {
                print!("{}", r.to_text());
            }
            if r.failed() {
                eprintln!("error: an internal check failed");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            let (kind, msg, code) = match f {
                Failure::Input(m) => ("invalid input", m, 1),
                Failure::Internal(m) => ("internal error", m, 2),
            };
            if cli.json {
                println!("{}", json!({ "error": kind, "message": msg }));
            }
            eprintln!("{kind}: {msg}");
            ExitCode::from(code)
        }
    }
}
