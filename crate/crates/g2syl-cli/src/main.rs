//! `g2syl`: tables and verification suites for the Sylow p-subgroup of G2(q).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use g2syl::chartable::{u_classes, verify_character_table, verify_classes, verify_subgroup_tables, ClassRep};
use g2syl::matgroup::{conjugacy_classes, verify_chevalley_constants, verify_closed_form, verify_commutators};
use g2syl::orbits::{verify_inner_products, verify_orbits};
use g2syl::supertheory::{superclasses, verify_supercharacter_theory};
use g2syl::tables::{emit_character_table, emit_supercharacter_table, Format};
use g2syl::{Field, G2Syl, Report, DEFAULT_BUDGET};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "g2syl", version, about = "Exact tables and checks for the Sylow p-subgroup of G2(q)")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Characteristic, an odd prime.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Extension degree, with --p.
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,
    /// Field order, instead of --p/--k.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Output format.
    #[arg(long, global = true, default_value = "md", value_parser = parse_format)]
    format: Format,
    /// Largest number of group elements an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print |U| = q^6.
    GroupOrder,
    /// Check every commutator relation over all parameter pairs.
    CommutatorsCheck,
    /// List the conjugacy classes by brute force.
    Classes,
    /// List the superclasses with their sizes.
    Superclasses,
    /// Emit the supercharacter table.
    SupercharacterTable {
        /// Append float approximations to exact entries.
        #[arg(long)]
        approx: bool,
    },
    /// Emit the irreducible character table (p > 3).
    CharacterTable {
        #[arg(long)]
        approx: bool,
        /// Emit without comparing closed forms to induced characters.
        #[arg(long)]
        skip_verify: bool,
    },
    /// Run verification suites; exits nonzero if any check fails.
    Verify {
        /// Comma-separated suites.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<Suite>,
        /// Random pairs per conjugation formula.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Characters per family in pairwise checks (all when omitted).
        #[arg(long)]
        sample_chars: Option<usize>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    Group,
    Orbits,
    Super,
    Chartab,
    All,
}

fn field_of(cfg: &RunConfig) -> Result<Field> {
    let field = match (cfg.q, cfg.p) {
        (Some(_), Some(_)) => bail!("give either --q or --p/--k, not both"),
        (Some(q), None) => Field::with_order(q)?,
        (None, Some(p)) => Field::new(p, cfg.k)?,
        (None, None) => bail!("a field is required: --q Q or --p P [--k K]"),
    };
    Ok(field)
}

fn emit(cfg: &RunConfig, doc: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, doc).with_context(|| format!("writing {}", path.display())),
        None => match std::io::stdout().lock().write_all(doc.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn render_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = r.to_json();
            s.push('\n');
            s
        }
        _ => {
            let failed = r.failures().count();
            let mut s = r.to_text();
            s.push_str(&format!("{}: {} checks, {} failed\n", r.suite, r.checks.len(), failed));
            s
        }
    }
}

fn small_doc(title: String, q: u32, columns: &[&str], rows: Vec<Vec<String>>, format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let m: serde_json::Map<String, serde_json::Value> =
                        columns.iter().zip(r).map(|(c, v)| (c.to_string(), json!(v))).collect();
                    serde_json::Value::Object(m)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({ "title": title, "q": q, "rows": rows }))
                .expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(columns).expect("in-memory write");
            for r in &rows {
                w.write_record(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Md => {
            let mut s = format!("# {title}\n\n| {} |\n|{}\n", columns.join(" | "), "---|".repeat(columns.len()));
            for r in &rows {
                s.push_str(&format!("| {} |\n", r.join(" | ")));
            }
            s
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = &cli.cfg;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("starting the worker pool")?;
    }
    let field = field_of(cfg)?;
    let group = G2Syl::new(&field);
    let q = field.q();
    match cli.cmd {
        Command::GroupOrder => {
            let doc = match cfg.format {
                Format::Json => format!("{}\n", json!({ "q": q, "order": group.order() })),
                _ => format!("{}\n", group.order()),
            };
            emit(cfg, &doc)?;
            Ok(true)
        }
        Command::CommutatorsCheck => {
            let r = verify_commutators(&group);
            emit(cfg, &render_report(&r, cfg.format))?;
            Ok(r.all_pass())
        }
        Command::Classes => {
            let title = format!("Conjugacy classes of the Sylow p-subgroup of G2({q})");
            let rows: Vec<Vec<String>> = if field.p() > 3 {
                let classes = u_classes(&group, cfg.budget)?;
                classes
                    .reps
                    .iter()
                    .zip(&classes.partition.classes)
                    .map(|(rep, c): (&ClassRep, _)| {
                        vec![rep.to_string(), c.size().to_string(), rep.superclass().to_string()]
                    })
                    .collect()
            } else {
                let classes = conjugacy_classes(&group, cfg.budget)?;
                classes
                    .classes
                    .iter()
                    .map(|c| {
                        let rep = group.from_coords(group.coords_of_index(c.rep));
                        let sc = g2syl::superclass_of(&rep.coords());
                        vec![format!("{rep:?}"), c.size().to_string(), sc.to_string()]
                    })
                    .collect()
            };
            emit(cfg, &small_doc(title, q, &["representative", "size", "superclass"], rows, cfg.format))?;
            Ok(true)
        }
        Command::Superclasses => {
            let s = superclasses(&group, cfg.budget)?;
            let rows = s
                .ids
                .iter()
                .zip(&s.layout.sizes)
                .map(|(id, size)| vec![id.to_string(), size.to_string()])
                .collect();
            let title = format!("Superclasses of the Sylow p-subgroup of G2({q})");
            emit(cfg, &small_doc(title, q, &["superclass", "size"], rows, cfg.format))?;
            Ok(true)
        }
        Command::SupercharacterTable { approx } => {
            emit(cfg, &emit_supercharacter_table(&group, cfg.budget, cfg.format, approx)?)?;
            Ok(true)
        }
        Command::CharacterTable { approx, skip_verify } => {
            emit(cfg, &emit_character_table(&group, cfg.budget, cfg.format, approx, skip_verify)?)?;
            Ok(true)
        }
        Command::Verify { suite, samples, seed, sample_chars } => {
            let r = verify(&group, cfg.budget, &suite, samples, seed, sample_chars)?;
            emit(cfg, &render_report(&r, cfg.format))?;
            Ok(r.all_pass())
        }
    }
}

fn verify(
    group: &G2Syl<'_>,
    budget: u64,
    suites: &[Suite],
    samples: usize,
    seed: u64,
    sample_chars: Option<usize>,
) -> Result<Report> {
    let want = |s: Suite| suites.contains(&s) || suites.contains(&Suite::All);
    let name = if suites.len() == 1 {
        format!("{:?}", suites[0]).to_lowercase()
    } else {
        suites.iter().map(|s| format!("{s:?}").to_lowercase()).collect::<Vec<_>>().join(",")
    };
    if want(Suite::Chartab) {
        g2syl::chartable::require_large_p(group.field())?;
    }
    let mut r = Report::new(name);
    if want(Suite::Group) {
        r.extend(verify_closed_form(group, budget)?);
        r.extend(verify_commutators(group));
        r.extend(verify_chevalley_constants());
    }
    if want(Suite::Orbits) {
        r.extend(verify_orbits(group, budget)?);
        r.extend(verify_inner_products(group, budget)?);
    }
    if want(Suite::Super) {
        r.extend(verify_supercharacter_theory(group, budget)?.1);
    }
    if want(Suite::Chartab) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        r.extend(verify_classes(group, budget, samples, &mut rng)?.1);
        r.extend(verify_subgroup_tables(group, budget)?);
        r.extend(verify_character_table(group, budget, sample_chars)?.1);
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
