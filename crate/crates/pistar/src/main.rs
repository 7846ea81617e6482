//! Command-line interface: codimension sequences, proper cocharacter
//! tables, generating-set verification, and the claim-registry suite for
//! finite-dimensional superalgebras with superinvolution.
//!
//! Exit codes: 0 = success / all checks pass; 1 = a verification failed;
//! 2 = usage, I/O, or computation error.

use clap::{Parser, Subcommand};
use pistar::cocharacter::cocharacter_table;
use pistar::codim::{codim_sequence, per_signature, proper_from_codim};
use pistar::star_algebra::{resolve_key, StarAlgebra, CATALOG_KEYS};
use pistar::tideal::{verify_tideal, GeneratorSet};
use pistar::verify::{registry, run_claims};
use serde::Serialize;
use std::path::Path;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pistar",
    version,
    about = "Exact codimension and cocharacter computations for superalgebras with superinvolution"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect or validate algebra descriptions.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Browse the built-in algebra catalog.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Compute the codimension sequence c_0..c_N of an algebra.
    Codim {
        /// Catalog key (direct sums via `+`) or path to an algebra JSON file.
        target: String,
        /// Largest degree N.
        #[arg(long)]
        n: usize,
        /// Also print the per-signature breakdown at degree N.
        #[arg(long)]
        per_signature: bool,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Compute the proper codimension sequence via the inverse binomial
    /// transform.
    ProperCodim {
        /// Catalog key (direct sums via `+`) or path to an algebra JSON file.
        target: String,
        /// Largest degree N.
        #[arg(long)]
        n: usize,
    },
    /// Compute the proper cocharacter multiplicity table (degree ≤ 2).
    Cocharacter {
        /// Catalog key (direct sums via `+`) or path to an algebra JSON file.
        target: String,
        /// Emit JSON instead of the Markdown table.
        #[arg(long)]
        json: bool,
    },
    /// Check a claimed generating set of the identity ideal: every
    /// generator must be an identity and the consequence span must equal
    /// the identity space degree by degree.
    VerifyTideal {
        /// Catalog key (direct sums via `+`) or path to an algebra JSON file.
        target: String,
        /// Path to the newline-separated generator file.
        #[arg(long)]
        generators: String,
        /// Largest multilinear degree to check (≤ 5).
        #[arg(long)]
        max_degree: usize,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the claim registry: codimension formulas, cocharacter tables,
    /// generating sets, axioms, and reconstruction round-trips.
    VerifyPaper {
        /// Run only claims whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Cap the degree bounds of all claims.
        #[arg(long)]
        max_n: Option<usize>,
        /// Emit the JSON report.
        #[arg(long, conflicts_with = "markdown")]
        json: bool,
        /// Emit the Markdown report (the default).
        #[arg(long)]
        markdown: bool,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Load an algebra JSON file and check the axioms.
    Validate {
        /// Path to the algebra JSON file.
        file: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List the catalog keys.
    List,
    /// Show one catalog algebra.
    Show {
        /// Catalog key (direct sums via `+`).
        key: String,
        /// Emit the algebra JSON instead of a summary.
        #[arg(long)]
        json: bool,
    },
}

/// Resolve a target argument: a catalog key (possibly a `+` direct sum)
/// first, else a path to an algebra JSON file.
fn load_target(target: &str) -> Result<StarAlgebra, String> {
    match resolve_key(target) {
        Ok(a) => Ok(a),
        Err(key_err) => {
            if Path::new(target).exists() {
                let text = std::fs::read_to_string(target)
                    .map_err(|e| format!("cannot read {target}: {e}"))?;
                StarAlgebra::from_json_str(&text).map_err(|e| format!("{target}: {e}"))
            } else {
                Err(format!(
                    "{key_err} (and no file named {target} exists); catalog keys: {}",
                    CATALOG_KEYS.join(", ")
                ))
            }
        }
    }
}

#[derive(Serialize)]
struct SigRow {
    sig: [usize; 4],
    codim: usize,
}

#[derive(Serialize)]
struct CodimOut {
    algebra: String,
    c: Vec<u64>,
    gamma: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_signature: Option<Vec<SigRow>>,
}

fn cmd_codim(target: &str, n: usize, with_sigs: bool, json: bool) -> Result<bool, String> {
    let a = load_target(target)?;
    let seq = codim_sequence(&a, n).map_err(|e| e.to_string())?;
    let sig_rows = if with_sigs {
        let rows = per_signature(&a, n).map_err(|e| e.to_string())?;
        Some(rows)
    } else {
        None
    };
    if json {
        let out = CodimOut {
            algebra: seq.algebra.clone(),
            c: seq.c.clone(),
            gamma: seq.gamma.clone(),
            per_signature: sig_rows.as_ref().map(|rows| {
                rows.iter()
                    .map(|r| SigRow {
                        sig: r.sig.0,
                        codim: r.codim,
                    })
                    .collect()
            }),
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("algebra: {}", seq.algebra);
        println!("c_0..c_{n} = {:?}", seq.c);
        match &seq.gamma {
            Some(g) => println!("gamma_0..gamma_{n} = {g:?}"),
            None => println!("gamma: not defined (inverse transform leaves the nonnegative integers)"),
        }
        if let Some(rows) = &sig_rows {
            println!("per-signature codimensions at n = {n}:");
            for r in rows {
                println!(
                    "  {}  multilinear dim {:>4}  identities {:>4}  codim {:>4}",
                    r.sig, r.pn_dim, r.identity_dim, r.codim
                );
            }
        }
    }
    Ok(true)
}

fn cmd_proper(target: &str, n: usize) -> Result<bool, String> {
    let a = load_target(target)?;
    let seq = codim_sequence(&a, n).map_err(|e| e.to_string())?;
    let gamma = proper_from_codim(&seq.c).map_err(|e| e.to_string())?;
    println!("algebra: {}", seq.algebra);
    println!("c_0..c_{n} = {:?}", seq.c);
    println!("gamma_0..gamma_{n} = {gamma:?}");
    Ok(true)
}

#[derive(Serialize)]
struct CocharOut {
    algebra: String,
    entries: Vec<CocharEntry>,
    character_sum: String,
}

#[derive(Serialize)]
struct CocharEntry {
    multipartition: String,
    multiplicity: usize,
}

fn cmd_cocharacter(target: &str, json: bool) -> Result<bool, String> {
    let a = load_target(target)?;
    let table = cocharacter_table(&a).map_err(|e| e.to_string())?;
    if json {
        let out = CocharOut {
            algebra: table.algebra.clone(),
            entries: table
                .entries
                .iter()
                .map(|(mp, m)| CocharEntry {
                    multipartition: mp.to_string(),
                    multiplicity: *m,
                })
                .collect(),
            character_sum: table.character_sum(),
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("{}", table.markdown());
    }
    Ok(true)
}

#[derive(Serialize)]
struct TidealOut {
    algebra: String,
    generators: Vec<String>,
    expansion_notes: Vec<String>,
    degrees: Vec<TidealDegreeOut>,
    verified: bool,
}

#[derive(Serialize)]
struct TidealDegreeOut {
    n: usize,
    consequence_dim: usize,
    identity_dim: usize,
    sound: bool,
    complete: bool,
    mismatches: Vec<String>,
}

fn cmd_verify_tideal(
    target: &str,
    gen_file: &str,
    max_degree: usize,
    json: bool,
) -> Result<bool, String> {
    let a = load_target(target)?;
    let text = std::fs::read_to_string(gen_file).map_err(|e| format!("cannot read {gen_file}: {e}"))?;
    let gens = GeneratorSet::parse(&text).map_err(|e| e.to_string())?;
    let report = verify_tideal(&a, &gens, max_degree).map_err(|e| e.to_string())?;
    if json {
        let out = TidealOut {
            algebra: report.algebra.clone(),
            generators: report.generators.clone(),
            expansion_notes: report.expansion_notes.clone(),
            degrees: report
                .degrees
                .iter()
                .map(|d| TidealDegreeOut {
                    n: d.n,
                    consequence_dim: d.consequence_dim,
                    identity_dim: d.identity_dim,
                    sound: d.sound,
                    complete: d.mismatches.is_empty(),
                    mismatches: d
                        .mismatches
                        .iter()
                        .map(|(s, c, i)| format!("{s}: consequences {c} vs identities {i}"))
                        .collect(),
                })
                .collect(),
            verified: report.verified,
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("algebra: {}", report.algebra);
        println!("generators ({}):", report.generators.len());
        for g in &report.generators {
            println!("  {g}");
        }
        for note in &report.expansion_notes {
            println!("note: {note}");
        }
        for d in &report.degrees {
            let status = if d.verdict { "ok" } else { "MISMATCH" };
            println!(
                "degree {}: consequences {} / identities {} [{status}]",
                d.n, d.consequence_dim, d.identity_dim
            );
            for (s, c, i) in &d.mismatches {
                println!("    {s}: consequences {c} vs identities {i}");
            }
        }
        println!(
            "verdict: {}",
            if report.verified {
                "generating set verified"
            } else {
                "NOT verified"
            }
        );
    }
    Ok(report.verified)
}

fn cmd_verify_paper(only: Option<&str>, max_n: Option<usize>, json: bool) -> Result<bool, String> {
    let claims = registry();
    let report = run_claims(&claims, only, max_n);
    if report.total == 0 {
        return Err(format!(
            "no claim id starts with {:?}; try prefixes like AX, BASE, L3.1, T4.7",
            only.unwrap_or("")
        ));
    }
    if json {
        println!("{}", report.json());
    } else {
        print!("{}", report.markdown());
    }
    Ok(report.all_pass())
}

fn cmd_algebra_validate(file: &str) -> Result<bool, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("cannot read {file}: {e}"))?;
    let a = StarAlgebra::from_json_str(&text).map_err(|e| format!("{file}: {e}"))?;
    let violations = a.validate();
    if violations.is_empty() {
        let dims = a.components().map_err(|e| e.to_string())?.dims();
        println!(
            "{}: valid ({}-dimensional, component dims {:?})",
            a.name, a.dim, dims
        );
        Ok(true)
    } else {
        println!("{}: {} axiom violations", a.name, violations.len());
        for v in &violations {
            println!("  {v}");
        }
        Ok(false)
    }
}

fn cmd_catalog(cmd: &CatalogCmd) -> Result<bool, String> {
    match cmd {
        CatalogCmd::List => {
            for key in CATALOG_KEYS {
                let a = resolve_key(key).map_err(|e| e.to_string())?;
                println!("{key:<12} dim {:>2}  {}", a.dim, a.name);
            }
            Ok(true)
        }
        CatalogCmd::Show { key, json } => {
            let a = resolve_key(key).map_err(|e| e.to_string())?;
            if *json {
                println!("{}", a.to_json_string());
            } else {
                let comps = a.components().map_err(|e| e.to_string())?;
                println!("name: {}", a.name);
                println!("dim: {}", a.dim);
                println!("unit: {}", if a.unit.is_some() { "yes" } else { "no" });
                println!("basis: {}", a.basis_labels.join(", "));
                let dims = comps.dims();
                println!(
                    "component dims: 0+ {}, 0- {}, 1+ {}, 1- {}",
                    dims[0], dims[1], dims[2], dims[3]
                );
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Algebra { cmd } => match cmd {
            AlgebraCmd::Validate { file } => cmd_algebra_validate(file),
        },
        Cmd::Catalog { cmd } => cmd_catalog(cmd),
        Cmd::Codim {
            target,
            n,
            per_signature,
            json,
        } => cmd_codim(target, *n, *per_signature, *json),
        Cmd::ProperCodim { target, n } => cmd_proper(target, *n),
        Cmd::Cocharacter { target, json } => cmd_cocharacter(target, *json),
        Cmd::VerifyTideal {
            target,
            generators,
            max_degree,
            json,
        } => cmd_verify_tideal(target, generators, *max_degree, *json),
        Cmd::VerifyPaper {
            only,
            max_n,
            json,
            markdown: _,
        } => cmd_verify_paper(only.as_deref(), *max_n, *json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
