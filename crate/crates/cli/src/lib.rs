//! Command line driver for the finitely presented groups toolkit.
//!
//! Exit codes: 0 success, 1 enumeration overflow or limits exceeded,
//! 2 parse or usage errors.

pub mod formats;
pub mod session;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use fpg_core::abelian::invariants_from_matrix;
use fpg_core::coset::{EnumResult, EnumerationParams, Strategy};
use fpg_core::derived::Termination;
use fpg_core::tietze::SimplifyParams;
use fpg_core::{
    abelian_invariants, derived_series, enumerate, invariants_mod, preimage_presentation,
    quotient_scan, relation_matrix, simplify, subgroup_presentation, Limits, Presentation,
    SubgroupSpec, Word,
};

use session::{sha256_hex, Session};

pub const EXIT_OK: i32 = 0;
pub const EXIT_LIMIT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(name = "fpg", about = "Investigate finitely presented groups", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Presentation file, one presentation in the `< gens | relators >`
    /// grammar (a trailing embedding block is ignored).
    file: PathBuf,
    /// Bound on simultaneously active cosets.
    #[arg(long, default_value_t = 1_000_000)]
    max_cosets: usize,
    /// Enumeration strategy: hlt or felsch.
    #[arg(long, default_value = "hlt")]
    strategy: String,
    /// Directory for reproducible artifacts and the manifest.
    #[arg(long)]
    session: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and echo the canonical form of a presentation.
    Parse {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Abelian invariants of the presented group, optionally modulo a
    /// prime power.
    Abelian {
        #[command(flatten)]
        common: CommonOpts,
        /// Prime-power modulus for modular diagonalization.
        #[arg(long = "mod")]
        modulus: Option<String>,
    },
    /// Enumerate cosets of a subgroup.
    Enum {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated subgroup generator words; empty means trivial.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Subgroup presentation by Reidemeister-Schreier rewriting.
    Rs {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Simplify a presentation by Tietze transformations.
    Simplify {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated generator names that must survive.
        #[arg(long)]
        protect: Option<String>,
        #[arg(long, default_value_t = 20)]
        max_passes: usize,
        #[arg(long, default_value_t = 5.0)]
        length_factor: f64,
    },
    /// Follow the derived series and report the factors.
    Derived {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 16)]
        max_levels: usize,
    },
    /// Try adding powers of candidate words and enumerate each quotient.
    Scan {
        #[command(flatten)]
        common: CommonOpts,
        /// Candidate words; defaults to pair products and commutators.
        #[arg(long)]
        words: Option<String>,
        /// Inclusive exponent range, e.g. 2..6.
        #[arg(long, default_value = "2..6")]
        exponents: String,
    },
    /// Present the preimage of a quotient subgroup in the original group.
    Preimage {
        #[command(flatten)]
        common: CommonOpts,
        /// Relators defining the quotient, comma-separated.
        #[arg(long)]
        extra: String,
        /// Subgroup words in the quotient; empty means the kernel.
        #[arg(long)]
        subgroup: Option<String>,
    },
}

/// Runs the CLI against the given arguments, writing the report to `out`.
pub fn run<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

struct Ctx {
    presentation: Presentation,
    limits: Limits,
    session: Option<Session>,
    cmd_line: String,
    input_digest: String,
}

impl Ctx {
    fn record(&self, kind: &str, params: &str, content: &str) -> Result<()> {
        if let Some(s) = &self.session {
            s.record(
                kind,
                &self.cmd_line,
                params,
                std::slice::from_ref(&self.input_digest),
                content,
            )?;
        }
        Ok(())
    }
}

fn load(common: &CommonOpts, cmd_line: String) -> Result<Ctx> {
    let text = std::fs::read_to_string(&common.file)
        .with_context(|| format!("cannot read {}", common.file.display()))?;
    let presentation = formats::parse_presentation_text(&text).map_err(|e| anyhow!("{e}"))?;
    let strategy = match common.strategy.as_str() {
        "hlt" => Strategy::Hlt,
        "felsch" => Strategy::Felsch,
        other => return Err(anyhow!("unknown strategy '{other}' (use hlt or felsch)")),
    };
    if common.max_cosets == 0 {
        return Err(anyhow!("--max-cosets must be positive"));
    }
    let limits = Limits {
        params: EnumerationParams {
            strategy,
            max_cosets: common.max_cosets,
        },
        ..Limits::default()
    };
    let session = match &common.session {
        Some(dir) => Some(Session::open(dir)?),
        None => None,
    };
    Ok(Ctx {
        presentation,
        limits,
        session,
        cmd_line,
        input_digest: sha256_hex(text.as_bytes()),
    })
}

fn words(p: &Presentation, list: &Option<String>) -> Result<Vec<Word>> {
    match list {
        None => Ok(Vec::new()),
        Some(s) => fpg_core::parse_word_list(s, p).map_err(|e| anyhow!("{e}")),
    }
}

fn cmd_string(name: &str, common: &CommonOpts, extra: &str) -> String {
    let mut s = format!(
        "fpg {name} {} --max-cosets {} --strategy {}",
        common.file.display(),
        common.max_cosets,
        common.strategy
    );
    if !extra.is_empty() {
        s.push(' ');
        s.push_str(extra);
    }
    s
}

fn dispatch<W: Write>(cli: Cli, out: &mut W) -> Result<i32> {
    match cli.cmd {
        Command::Parse { common } => {
            let ctx = load(&common, cmd_string("parse", &common, ""))?;
            let text = ctx.presentation.format();
            writeln!(out, "{text}")?;
            writeln!(
                out,
                "{} generators, {} relators, total length {}",
                ctx.presentation.generator_count(),
                ctx.presentation.relators().len(),
                ctx.presentation.total_length()
            )?;
            ctx.record("presentation", "", &format!("{text}\n"))?;
            Ok(EXIT_OK)
        }
        Command::Abelian { common, modulus } => {
            let extra = modulus
                .as_ref()
                .map(|m| format!("--mod {m}"))
                .unwrap_or_default();
            let ctx = load(&common, cmd_string("abelian", &common, &extra))?;
            let m = relation_matrix(&ctx.presentation);
            let report = match &modulus {
                Some(text) => {
                    let modulus: BigInt =
                        text.parse().map_err(|_| anyhow!("bad modulus '{text}'"))?;
                    let mi = invariants_mod(&m, &modulus).map_err(|e| anyhow!("{e}"))?;
                    format!("{mi}")
                }
                None => {
                    let inv = invariants_from_matrix(&m);
                    format!("{inv}")
                }
            };
            writeln!(out, "{report}")?;
            ctx.record("matrix", &extra, &formats::format_matrix(&m))?;
            ctx.record("report", &extra, &format!("{report}\n"))?;
            Ok(EXIT_OK)
        }
        Command::Enum { common, subgroup } => {
            let extra = subgroup
                .as_ref()
                .map(|s| format!("--subgroup \"{s}\""))
                .unwrap_or_default();
            let ctx = load(&common, cmd_string("enum", &common, &extra))?;
            let sub = SubgroupSpec::new(words(&ctx.presentation, &subgroup)?);
            let result = enumerate(&ctx.presentation, &sub, &ctx.limits.params)
                .map_err(|e| anyhow!("{e}"))?;
            match result {
                EnumResult::Complete(t) => {
                    writeln!(out, "index {}", t.index())?;
                    writeln!(
                        out,
                        "total defined {}, max active {}",
                        t.stats().total_defined,
                        t.stats().max_active
                    )?;
                    ctx.record("table", &extra, &formats::format_coset_table(&t))?;
                    ctx.record("report", &extra, &format!("index {}\n", t.index()))?;
                    Ok(EXIT_OK)
                }
                EnumResult::Overflow(stats) => {
                    writeln!(
                        out,
                        "overflow: exceeded {} active cosets (total defined {})",
                        common.max_cosets, stats.total_defined
                    )?;
                    Ok(EXIT_LIMIT)
                }
            }
        }
        Command::Rs { common, subgroup } => {
            let extra = subgroup
                .as_ref()
                .map(|s| format!("--subgroup \"{s}\""))
                .unwrap_or_default();
            let ctx = load(&common, cmd_string("rs", &common, &extra))?;
            let sub = SubgroupSpec::new(words(&ctx.presentation, &subgroup)?);
            let result = enumerate(&ctx.presentation, &sub, &ctx.limits.params)
                .map_err(|e| anyhow!("{e}"))?;
            let Some(table) = result.complete() else {
                writeln!(out, "overflow: enumeration did not complete")?;
                return Ok(EXIT_LIMIT);
            };
            let sp =
                subgroup_presentation(&ctx.presentation, &table).map_err(|e| anyhow!("{e}"))?;
            writeln!(out, "index {}", table.index())?;
            writeln!(
                out,
                "schreier generators {}, relators kept {} (pre-reduction {})",
                sp.stats.schreier_generators,
                sp.presentation.relators().len(),
                sp.stats.pre_reduction_relators
            )?;
            let text = formats::format_subgroup_presentation(&sp, &ctx.presentation);
            write!(out, "{text}")?;
            ctx.record("subpres", &extra, &text)?;
            Ok(EXIT_OK)
        }
        Command::Simplify {
            common,
            protect,
            max_passes,
            length_factor,
        } => {
            let extra = format!(
                "{}--max-passes {max_passes} --length-factor {length_factor}",
                protect
                    .as_ref()
                    .map(|s| format!("--protect \"{s}\" "))
                    .unwrap_or_default()
            );
            let ctx = load(&common, cmd_string("simplify", &common, &extra))?;
            let mut params = SimplifyParams {
                max_passes,
                max_length_factor: length_factor,
                ..Default::default()
            };
            if let Some(names) = &protect {
                for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let g = ctx
                        .presentation
                        .generator_named(name)
                        .ok_or_else(|| anyhow!("unknown generator '{name}'"))?;
                    params.protected.insert(g);
                }
            }
            let (q, tr) = simplify(&ctx.presentation, &params);
            writeln!(out, "{}", q.format())?;
            writeln!(
                out,
                "eliminated {} generators; {} generators, {} relators remain",
                tr.eliminations().len(),
                q.generator_count(),
                q.relators().len()
            )?;
            ctx.record("presentation", &extra, &format!("{}\n", q.format()))?;
            ctx.record("trace", &extra, &formats::format_trace(&tr))?;
            Ok(EXIT_OK)
        }
        Command::Derived { common, max_levels } => {
            let extra = format!("--max-levels {max_levels}");
            let ctx = load(&common, cmd_string("derived", &common, &extra))?;
            let limits = Limits {
                max_levels,
                ..ctx.limits.clone()
            };
            let report = derived_series(&ctx.presentation, &limits);
            let mut text = String::new();
            for (i, lvl) in report.levels.iter().enumerate() {
                text.push_str(&format!("level {i}: abelian quotient {}", lvl.invariants));
                if let Some(ix) = lvl.next_index {
                    text.push_str(&format!("; derived subgroup index {ix}"));
                }
                text.push('\n');
            }
            match report.termination {
                Termination::FreeAbelian(rank) => {
                    text.push_str(&format!("termination: free abelian of rank {rank}\n"))
                }
                Termination::TrivialGroup => text.push_str("termination: trivial group\n"),
                Termination::InfiniteAbelianization => {
                    text.push_str("termination: infinite abelianization\n")
                }
                Termination::PerfectGroup => text.push_str("termination: perfect group\n"),
                Termination::LimitsExceeded => text.push_str("termination: limits exceeded\n"),
            }
            if let Some(len) = report.derived_length() {
                text.push_str(&format!("soluble of derived length {len}\n"));
                let factors: Vec<String> =
                    report.factors().iter().map(|f| format!("{f}")).collect();
                text.push_str(&format!("derived factors: {}\n", factors.join(", ")));
            }
            write!(out, "{text}")?;
            ctx.record("report", &extra, &text)?;
            if report.termination == Termination::LimitsExceeded {
                Ok(EXIT_LIMIT)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::Scan {
            common,
            words: cand,
            exponents,
        } => {
            let extra = format!(
                "{}--exponents {exponents}",
                cand.as_ref()
                    .map(|s| format!("--words \"{s}\" "))
                    .unwrap_or_default()
            );
            let ctx = load(&common, cmd_string("scan", &common, &extra))?;
            let candidates = words(&ctx.presentation, &cand)?;
            let (lo, hi) = exponents
                .split_once("..")
                .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
                .ok_or_else(|| anyhow!("bad exponent range '{exponents}' (use LO..HI)"))?;
            let report = quotient_scan(&ctx.presentation, &candidates, lo..=hi, &ctx.limits);
            let mut text = String::new();
            for entry in &report.entries {
                let added: Vec<String> = entry
                    .added
                    .iter()
                    .map(|w| ctx.presentation.format_word(w))
                    .collect();
                let outcome = match entry.outcome {
                    fpg_core::ScanOutcome::Trivial => "trivial".to_string(),
                    fpg_core::ScanOutcome::FiniteQuotient(n) => format!("order {n}"),
                    fpg_core::ScanOutcome::Overflow => "overflow".to_string(),
                };
                text.push_str(&format!("added {}: {outcome}\n", added.join(", ")));
            }
            write!(out, "{text}")?;
            ctx.record("report", &extra, &text)?;
            Ok(EXIT_OK)
        }
        Command::Preimage {
            common,
            extra: extra_rel,
            subgroup,
        } => {
            let opt = format!(
                "--extra \"{extra_rel}\"{}",
                subgroup
                    .as_ref()
                    .map(|s| format!(" --subgroup \"{s}\""))
                    .unwrap_or_default()
            );
            let ctx = load(&common, cmd_string("preimage", &common, &opt))?;
            let extras = fpg_core::parse_word_list(&extra_rel, &ctx.presentation)
                .map_err(|e| anyhow!("{e}"))?;
            let sub_words = words(&ctx.presentation, &subgroup)?;
            match preimage_presentation(&ctx.presentation, &extras, &sub_words, &ctx.limits) {
                Ok(r) => {
                    writeln!(out, "index {}", r.index)?;
                    writeln!(
                        out,
                        "schreier generators {}, relators kept {} (pre-reduction {})",
                        r.subgroup.stats.schreier_generators,
                        r.subgroup.presentation.relators().len(),
                        r.subgroup.stats.pre_reduction_relators
                    )?;
                    let inv = abelian_invariants(&r.subgroup.presentation);
                    writeln!(out, "abelian invariants: {inv}")?;
                    let text =
                        formats::format_subgroup_presentation(&r.subgroup, &ctx.presentation);
                    ctx.record("subpres", &opt, &text)?;
                    ctx.record(
                        "report",
                        &opt,
                        &format!("index {}\nabelian invariants: {inv}\n", r.index),
                    )?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(out, "overflow: {e}")?;
                    Ok(EXIT_LIMIT)
                }
            }
        }
    }
}

/// Convenience used by tests: run and capture stdout.
pub fn run_capture(args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut buf = Vec::new();
    let code = run(&argv, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}
