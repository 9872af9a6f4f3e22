//! Command-line front end: `char2 irreducibles|verify|suite|blocks|brauer-table`.
//!
//! Exit codes are 0 when every check passes, 1 on a mathematical finding and
//! 2 on usage or parse errors.

pub mod corpus;
pub mod stretch;
pub mod suite;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::blk::{covering, Blocks, CoveringRecord};
use crate::brc::brauer_table;
use crate::clf::{verify_muller, PairContext};
use crate::error::{Error, Result};
use crate::frm::quadratic_type;
use crate::grp::{perm, Group, PermGroup};
use corpus::{named_group, CorpusKind};
use suite::{run_suite, Cache, Check, FieldInfo, Options, RunReport, Subject};

/// Groups above this order are listed without block labels.
pub const LISTING_BLOCK_LIMIT: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    #[value(name = "T1")]
    T1,
    #[value(name = "T2")]
    T2,
    #[value(name = "T3")]
    T3,
    #[value(name = "T4")]
    T4,
    Fong,
    Radical,
    Height0,
    CentralTheta,
    QuadCriterion,
    OddQuotient,
    Subnormal,
    PrincipalBlock,
}

impl Theorem {
    pub fn check(self) -> Check {
        match self {
            Theorem::T1 => Check::T1,
            Theorem::T2 => Check::T2,
            Theorem::T3 => Check::T3,
            Theorem::T4 => Check::T4,
            Theorem::Fong => Check::Fong,
            Theorem::Radical => Check::Radical,
            Theorem::Height0 => Check::Height0,
            Theorem::CentralTheta => Check::CentralTheta,
            Theorem::QuadCriterion => Check::QuadCriterion,
            Theorem::OddQuotient => Check::OddQuotient,
            Theorem::Subnormal => Check::Subnormal,
            Theorem::PrincipalBlock => Check::PrincipalBlock,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusArg {
    Default,
    Extended,
}

#[derive(Debug, Parser)]
#[command(name = "char2", version, about = "Self-dual modules and 2-blocks of finite groups in characteristic 2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for the randomized module algorithms.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub cap: usize,
    /// Include the M22 items.
    #[arg(long, global = true)]
    pub stretch: bool,
    /// Time budget in seconds for the M22 items.
    #[arg(long, global = true, default_value_t = 3600)]
    pub budget: u64,
    /// Output directory for reports and the cache.
    #[arg(long, global = true, env = "CHAR2_OUT", default_value = "char2-out")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Concurrent corpus entries in `suite`.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Ignore and do not write cached reports.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the simple modules with duality, quadratic type and block.
    Irreducibles {
        #[arg(long)]
        group: String,
    },
    /// Run one verifier.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        group: String,
        #[arg(long)]
        normal: Option<String>,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Run every verifier over a corpus.
    Suite {
        #[arg(long, value_enum, default_value_t = CorpusArg::Default)]
        corpus: CorpusArg,
    },
    /// The 2-blocks, and with `--normal` the covering relation.
    Blocks {
        #[arg(long)]
        group: String,
        #[arg(long)]
        normal: Option<String>,
    },
    /// The Brauer character table.
    BrauerTable {
        #[arg(long)]
        group: String,
    },
}

/// A group from a file in the `degree n` + cycles format, or a built-in
/// name such as `S4`, `SL(2,3)`, `Muller3` or `M22`.
pub fn resolve_group(arg: &str, cap: usize) -> Result<Group> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        return Ok(Arc::new(PermGroup::from_text(&text, cap)?.named(name)));
    }
    let g = named_group(arg).ok_or_else(|| Error::InvalidInput(format!("no group file or built-in group `{arg}`")))?;
    if g.order() > cap {
        return Err(Error::GroupTooLarge { cap });
    }
    Ok(g)
}

/// A subgroup of `g` from a generator file, or a built-in group acting on
/// the first points and fixing the rest.
pub fn resolve_subgroup(g: &Group, arg: &str) -> Result<Group> {
    let path = Path::new(arg);
    let (name, gens) = if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let (n, gens) = perm::parse_group_text(&text)?;
        if n != g.degree() {
            return Err(Error::InvalidInput(format!("subgroup has degree {n}, group has degree {}", g.degree())));
        }
        (path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg).to_string(), gens)
    } else {
        let h = named_group(arg)
            .ok_or_else(|| Error::InvalidInput(format!("no subgroup file or built-in group `{arg}`")))?;
        if h.degree() > g.degree() {
            return Err(Error::InvalidInput(format!("{} has more points than {}", h.name(), g.name())));
        }
        let gens = h
            .gens()
            .iter()
            .map(|x| x.iter().copied().chain(x.len() as u32..g.degree() as u32).collect())
            .collect();
        (h.name().to_string(), gens)
    };
    Ok(Arc::new(g.subgroup(gens)?.named(name)))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Finding(_) | Error::NotIntegral(_) | Error::RetryExhausted(_) | Error::Incomplete(_) => 1,
        _ => 2,
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: &str) -> Result<()> {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(())
}

fn persist<T: Serialize>(dir: &Path, stem: &str, value: &T, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{stem}.json")), serde_json::to_string_pretty(value)?)?;
    std::fs::write(dir.join(format!("{stem}.txt")), text)?;
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibleRow {
    pub label: String,
    pub dim: usize,
    pub self_dual: bool,
    /// Present for non-trivial self-dual simples.
    pub quadratic: Option<bool>,
    pub block: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Listing {
    pub group: String,
    pub order: usize,
    pub field: FieldInfo,
    pub simples: Vec<IrreducibleRow>,
}

impl Listing {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} (order {}) over GF(2^{}): {} simple modules\n",
            self.group,
            self.order,
            self.field.degree,
            self.simples.len()
        );
        for r in &self.simples {
            s.push_str(&format!(
                "{:>5}  dim {:>4}  {}{}{}\n",
                r.label,
                r.dim,
                if r.self_dual { "self-dual" } else { "dual pair" },
                match r.quadratic {
                    Some(true) => ", quadratic",
                    Some(false) => ", not quadratic",
                    None => "",
                },
                r.block.as_ref().map_or(String::new(), |b| format!(", block {b}"))
            ));
        }
        s
    }
}

pub fn irreducibles(g: &Group, seed: u64) -> Result<Listing> {
    let mut subject = Subject::new(g, seed)?;
    let irr = subject.irr()?.clone();
    let blocks = if g.order() <= LISTING_BLOCK_LIMIT {
        Some(Blocks::compute(&irr)?)
    } else {
        None
    };
    let dual = irr.dual_map();
    let mut simples = Vec::with_capacity(irr.len());
    for (j, s) in irr.iter().enumerate() {
        let self_dual = dual[j] == j;
        let quadratic = if self_dual && !s.is_trivial() {
            Some(quadratic_type(&s.module)?.witness.is_some())
        } else {
            None
        };
        simples.push(IrreducibleRow {
            label: s.label.clone(),
            dim: s.dim(),
            self_dual,
            quadratic,
            block: blocks.as_ref().map(|b| b.blocks[b.block_of[j]].label.clone()),
        });
    }
    Ok(Listing {
        group: g.name().to_string(),
        order: g.order(),
        field: FieldInfo {
            group: g.name().to_string(),
            degree: irr.field.k(),
            m: irr.field.m(),
        },
        simples,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlocksOutput {
    pub blocks: crate::blk::BlocksExport,
    pub normal: Option<crate::blk::BlocksExport>,
    pub covering: Vec<CoveringRecord>,
}

pub fn blocks_output(g: &Group, n: Option<&Group>, seed: u64) -> Result<(BlocksOutput, String)> {
    let mut subject = Subject::new(g, seed)?;
    let gb = Blocks::compute(subject.irr()?)?;
    let mut text = gb.to_text();
    let mut out = BlocksOutput {
        blocks: gb.export(),
        normal: None,
        covering: Vec::new(),
    };
    if let Some(n) = n {
        let ctx: &PairContext = subject.pair(n)?;
        let nb = if n.order() == g.order() {
            gb.clone()
        } else {
            Blocks::compute(&ctx.irr_n)?
        };
        let cov = covering(ctx, &gb, &nb)?;
        text.push_str(&nb.to_text());
        text.push_str("covering (block of G, block of N, weakly regular)\n");
        for r in cov.records.iter().filter(|r| r.covers) {
            text.push_str(&format!(
                "  {} covers {}{}\n",
                r.block_of_g,
                r.block_of_n,
                if r.weakly_regular { " (weakly regular)" } else { "" }
            ));
        }
        out.normal = Some(nb.export());
        out.covering = cov.records;
    }
    Ok((out, text))
}

fn options(cli: &Cli) -> Options {
    Options {
        seed: cli.seed,
        cap: cli.cap,
        cache_dir: (!cli.no_cache).then(|| cli.out.join("cache")),
        workers: cli.workers,
    }
}

fn stretch_report(cli: &Cli, run: &mut RunReport) {
    let seed = cli.seed;
    match stretch::with_budget(Duration::from_secs(cli.budget), move || stretch::verify_m22(seed)) {
        Some(Ok(r)) => run.add(r),
        Some(Err(e)) => run.add(suite::error_report("m22", "M22", "", &e)),
        None => run.notes.push(format!("M22 skipped: budget of {} s exhausted", cli.budget)),
    }
}

fn verify(cli: &Cli, theorem: Theorem, group: &str, normal: Option<&str>, subgroup: Option<&str>) -> Result<RunReport> {
    let g = resolve_group(group, cli.cap)?;
    let check = theorem.check();
    let sub = match (normal, subgroup) {
        (Some(_), Some(_)) => return Err(Error::InvalidInput("give --normal or --subgroup, not both".into())),
        (Some(s), None) | (None, Some(s)) => Some(resolve_subgroup(&g, s)?),
        (None, None) => None,
    };
    if check.needs_normal() {
        match &sub {
            None => return Err(Error::InvalidInput(format!("{} needs --normal", check.name()))),
            Some(n) if !g.is_normal(n) => return Err(Error::NotNormal),
            _ => {}
        }
    }
    let mut run = RunReport::new(&format!("verify {}", check.name()), cli.seed);
    let muller = g
        .name()
        .strip_prefix("Muller")
        .and_then(|p| p.parse::<u32>().ok());
    if check == Check::Subnormal && sub.is_none() {
        let p = muller.ok_or_else(|| Error::InvalidInput("subnormal needs --subgroup".into()))?;
        run.add(verify_muller(p, cli.cap)?);
        return Ok(run);
    }
    let mut subject = Subject::new(&g, cli.seed)?;
    run.fields.push(FieldInfo {
        group: g.name().to_string(),
        degree: subject.field.k(),
        m: subject.field.m(),
    });
    let cache = match options(cli).cache_dir {
        Some(d) => Some(Cache::new(d)?),
        None => None,
    };
    let key_sub = if check.needs_normal() || check == Check::Subnormal {
        sub.as_ref()
    } else {
        None
    };
    let key = suite::cache_key(check.name(), &g, key_sub, &subject.field, cli.seed);
    let report = match cache.as_ref().and_then(|c| c.get(&key)) {
        Some(r) => r,
        None => {
            let r = match subject.run(check, key_sub) {
                Ok(r) => r,
                Err(e) if exit_code(&e) == 2 => return Err(e),
                Err(e) => suite::error_report(check.name(), g.name(), key_sub.map_or("", |h| h.name()), &e),
            };
            if let Some(c) = &cache {
                if r.passed() {
                    let _ = c.put(&key, &r);
                }
            }
            r
        }
    };
    run.add(report);
    Ok(run)
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Irreducibles { group } => {
            let g = resolve_group(group, cli.cap)?;
            let l = irreducibles(&g, cli.seed)?;
            let text = l.to_text();
            persist(&cli.out, "irreducibles", &l, &text)?;
            emit(cli.format, &l, &text)?;
            Ok(0)
        }
        Command::BrauerTable { group } => {
            let g = resolve_group(group, cli.cap)?;
            let mut subject = Subject::new(&g, cli.seed)?;
            let t = brauer_table(subject.irr()?)?;
            let e = t.export();
            let text = t.to_text();
            persist(&cli.out, "brauer-table", &e, &text)?;
            emit(cli.format, &e, &text)?;
            Ok(0)
        }
        Command::Blocks { group, normal } => {
            let g = resolve_group(group, cli.cap)?;
            let n = match normal {
                Some(s) => {
                    let n = resolve_subgroup(&g, s)?;
                    if !g.is_normal(&n) {
                        return Err(Error::NotNormal);
                    }
                    Some(n)
                }
                None => None,
            };
            let (out, text) = blocks_output(&g, n.as_ref(), cli.seed)?;
            persist(&cli.out, "blocks", &out, &text)?;
            emit(cli.format, &out, &text)?;
            Ok(0)
        }
        Command::Verify {
            theorem,
            group,
            normal,
            subgroup,
        } => {
            let mut run = verify(cli, *theorem, group, normal.as_deref(), subgroup.as_deref())?;
            if cli.stretch {
                stretch_report(cli, &mut run);
            }
            finish(cli, &run)
        }
        Command::Suite { corpus } => {
            let kind = match corpus {
                CorpusArg::Default => CorpusKind::Default,
                CorpusArg::Extended => CorpusKind::Extended,
            };
            let (mut run, timings) = run_suite(kind, &options(cli))?;
            if cli.stretch {
                stretch_report(cli, &mut run);
            }
            std::fs::create_dir_all(&cli.out)?;
            std::fs::write(cli.out.join("timings.json"), serde_json::to_string_pretty(&timings)?)?;
            finish(cli, &run)
        }
    }
}

fn finish(cli: &Cli, run: &RunReport) -> Result<i32> {
    run.persist(&cli.out)?;
    emit(cli.format, run, &run.to_text())?;
    Ok(if run.passed() { 0 } else { 1 })
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("char2: {e}");
            exit_code(&e)
        }
    }
}
