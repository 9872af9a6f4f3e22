//! Running checks on groups, caching their reports, and the corpus suite.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::corpus::{corpus, CorpusEntry, CorpusKind};
use crate::blk::{defects, verify_central_theta, verify_odd_height0, verify_principal_block_lemma, verify_t4, BlockContext};
use crate::brc::{verify_radical, verify_table};
use crate::clf::{
    default_field, verify_muller, verify_odd_quotient, verify_quadratic_criterion, verify_subnormal, verify_t1,
    verify_t2, verify_t3, PairContext,
};
use crate::error::{Error, Result};
use crate::fld::SplittingField;
use crate::frm::verify_fong;
use crate::grp::{perm, Group};
use crate::report::Report;
use crate::rep::simples::SimplesOptions;
use crate::rep::IrrSet;

/// Bumped whenever the layout of persisted reports changes; part of every
/// cache key.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Check {
    T1,
    T2,
    T3,
    T4,
    Fong,
    Radical,
    BrauerTable,
    Height0,
    CentralTheta,
    QuadCriterion,
    OddQuotient,
    Subnormal,
    PrincipalBlock,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::T1 => "T1",
            Check::T2 => "T2",
            Check::T3 => "T3",
            Check::T4 => "T4",
            Check::Fong => "fong",
            Check::Radical => "radical",
            Check::BrauerTable => "brauer-table",
            Check::Height0 => "height0",
            Check::CentralTheta => "central-theta",
            Check::QuadCriterion => "quad-criterion",
            Check::OddQuotient => "odd-quotient",
            Check::Subnormal => "subnormal",
            Check::PrincipalBlock => "principal-block",
        }
    }

    /// Checks that need a normal subgroup.
    pub fn needs_normal(self) -> bool {
        matches!(
            self,
            Check::T1 | Check::T2 | Check::T3 | Check::T4 | Check::QuadCriterion | Check::OddQuotient
        )
    }

    pub const GROUP: [Check; 6] = [
        Check::Fong,
        Check::Radical,
        Check::BrauerTable,
        Check::Height0,
        Check::CentralTheta,
        Check::PrincipalBlock,
    ];

    pub const PAIR: [Check; 6] = [Check::T1, Check::T2, Check::T3, Check::QuadCriterion, Check::T4, Check::OddQuotient];
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub cap: usize,
    pub cache_dir: Option<PathBuf>,
    pub workers: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 1,
            cap: 1_000_000,
            cache_dir: None,
            workers: 1,
        }
    }
}

/// A group with lazily computed simples, blocks and pair contexts.
pub struct Subject {
    pub g: Group,
    pub field: Arc<SplittingField>,
    seed: u64,
    irr: Option<IrrSet>,
    blocks: Option<BlockContext>,
    pairs: HashMap<String, PairContext>,
    others: HashMap<String, IrrSet>,
}

impl Subject {
    pub fn new(g: &Group, seed: u64) -> Result<Self> {
        Ok(Self::with_field(g, default_field(g)?, seed))
    }

    pub fn with_field(g: &Group, field: Arc<SplittingField>, seed: u64) -> Self {
        Subject {
            g: g.clone(),
            field,
            seed,
            irr: None,
            blocks: None,
            pairs: HashMap::new(),
            others: HashMap::new(),
        }
    }

    fn options(&self) -> SimplesOptions {
        SimplesOptions {
            seed: self.seed,
            ..SimplesOptions::default()
        }
    }

    pub fn irr(&mut self) -> Result<&IrrSet> {
        if self.irr.is_none() {
            self.irr = Some(IrrSet::compute_with(&self.g, &self.field, &self.options())?);
        }
        Ok(self.irr.as_ref().expect("just set"))
    }

    pub fn blocks(&mut self) -> Result<&BlockContext> {
        if self.blocks.is_none() {
            let irr = self.irr()?.clone();
            self.blocks = Some(BlockContext::new(irr)?);
        }
        Ok(self.blocks.as_ref().expect("just set"))
    }

    fn irr_of(&mut self, h: &Group) -> Result<IrrSet> {
        if h.order() == self.g.order() {
            return Ok(self.irr()?.clone());
        }
        if let Some(s) = self.others.get(h.name()) {
            return Ok(s.clone());
        }
        let s = IrrSet::compute_with(h, &self.field, &self.options())?;
        self.others.insert(h.name().to_string(), s.clone());
        Ok(s)
    }

    pub fn pair(&mut self, n: &Group) -> Result<&PairContext> {
        if !self.pairs.contains_key(n.name()) {
            let irr_g = self.irr()?.clone();
            let irr_n = self.irr_of(n)?;
            self.pairs.insert(n.name().to_string(), PairContext::from_sets(irr_g, irr_n)?);
        }
        Ok(&self.pairs[n.name()])
    }

    pub fn run(&mut self, check: Check, sub: Option<&Group>) -> Result<Report> {
        let need = |c: Check| {
            sub.ok_or_else(|| Error::InvalidInput(format!("{} needs a subgroup", c.name())))
        };
        match check {
            Check::Fong => verify_fong(self.irr()?),
            Check::Radical => Ok(verify_radical(self.irr()?)),
            Check::BrauerTable => verify_table(self.irr()?),
            Check::Height0 => verify_odd_height0(self.blocks()?),
            Check::CentralTheta => verify_central_theta(self.blocks()?),
            Check::PrincipalBlock => verify_principal_block_lemma(self.blocks()?),
            Check::T1 => verify_t1(self.pair(need(check)?)?),
            Check::T2 => verify_t2(self.pair(need(check)?)?),
            Check::T3 => verify_t3(self.pair(need(check)?)?),
            Check::T4 => verify_t4(self.pair(need(check)?)?),
            Check::QuadCriterion => verify_quadratic_criterion(self.pair(need(check)?)?),
            Check::OddQuotient => verify_odd_quotient(self.pair(need(check)?)?),
            Check::Subnormal => {
                let h = need(check)?.clone();
                let irr_h = self.irr_of(&h)?;
                verify_subnormal(self.irr()?, &irr_h)
            }
        }
    }
}

/// A check that failed with an error becomes a failing report.
pub fn error_report(check: &str, g: &str, sub: &str, e: &Error) -> Report {
    let mut r = Report::new(check, g, sub);
    r.push("error", false, e.to_string());
    r
}

#[derive(Serialize)]
struct KeyParts<'a> {
    tool: &'a str,
    schema: u32,
    check: &'a str,
    group: String,
    subgroup: String,
    field_k: usize,
    field_m: u64,
    seed: u64,
}

fn group_text(g: &Group) -> String {
    perm::format_group_text(g.degree(), g.gens())
}

/// Hex SHA-256 over the tool version, schema, check, generators of the
/// group and subgroup, field and seed.
pub fn cache_key(check: &str, g: &Group, sub: Option<&Group>, field: &SplittingField, seed: u64) -> String {
    let parts = KeyParts {
        tool: TOOL_VERSION,
        schema: SCHEMA_VERSION,
        check,
        group: group_text(g),
        subgroup: sub.map(group_text).unwrap_or_default(),
        field_k: field.k(),
        field_m: field.m(),
        seed,
    };
    let bytes = serde_json::to_vec(&parts).expect("key serializes");
    hex::encode(Sha256::digest(&bytes))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Report> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, r: &Report) -> Result<()> {
        std::fs::write(self.path(key), serde_json::to_string_pretty(r)?)?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub group: String,
    pub degree: usize,
    pub m: u64,
}

/// Everything a run produced except timings, so identical inputs give
/// identical bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub command: String,
    pub seed: u64,
    pub fields: Vec<FieldInfo>,
    pub checks: Vec<Report>,
    pub findings: Vec<String>,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            tool: "char2".into(),
            version: TOOL_VERSION.into(),
            schema: SCHEMA_VERSION,
            command: command.into(),
            seed,
            fields: Vec::new(),
            checks: Vec::new(),
            findings: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn add(&mut self, r: Report) {
        for i in r.findings() {
            let sub = if r.subgroup.is_empty() {
                String::new()
            } else {
                format!(" / {}", r.subgroup)
            };
            self.findings
                .push(format!("{} {}{}: {}: {}", r.check, r.group, sub, i.subject, i.detail));
        }
        self.checks.push(r);
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.checks {
            s.push_str(&r.to_text());
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        let passed = self.checks.iter().filter(|r| r.passed()).count();
        s.push_str(&format!(
            "{}: {} of {} checks passed, {} finding(s)\n",
            self.command,
            passed,
            self.checks.len(),
            self.findings.len()
        ));
        s
    }

    /// Writes `run.json` and `run.txt` under `dir`.
    pub fn persist(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("run.json"), serde_json::to_string_pretty(self)?)?;
        std::fs::write(dir.join("run.txt"), self.to_text())?;
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub entry: String,
    pub check: String,
    pub subgroup: String,
    pub seconds: f64,
    pub cached: bool,
}

/// Runs one check through the cache.
pub fn run_cached(
    subject: &mut Subject,
    check: Check,
    sub: Option<&Group>,
    cache: Option<&Cache>,
) -> (Report, bool) {
    let key = cache_key(check.name(), &subject.g, sub, &subject.field, subject.seed);
    if let Some(r) = cache.and_then(|c| c.get(&key)) {
        return (r, true);
    }
    let g = subject.g.name().to_string();
    let s = sub.map(|h| h.name().to_string()).unwrap_or_default();
    match subject.run(check, sub) {
        Ok(r) => {
            if let Some(c) = cache {
                let _ = c.put(&key, &r);
            }
            (r, false)
        }
        Err(e) => (error_report(check.name(), &g, &s, &e), false),
    }
}

/// The checks the suite applies to one entry.
pub fn plan(entry: &CorpusEntry) -> Vec<(Check, Option<Group>)> {
    let mut out: Vec<(Check, Option<Group>)> = Check::GROUP.iter().map(|&c| (c, None)).collect();
    for n in &entry.normals {
        for &c in &Check::PAIR {
            if c == Check::OddQuotient && (entry.group.order() / n.order()).is_multiple_of(2) {
                continue;
            }
            out.push((c, Some(n.clone())));
        }
    }
    for h in &entry.subnormals {
        out.push((Check::Subnormal, Some(h.clone())));
    }
    out
}

/// Block defects with the principal block first and the rest descending.
pub fn defect_profile(blocks: &crate::blk::Blocks) -> Vec<u32> {
    let mut d = defects(blocks);
    if d.len() > 1 {
        d[1..].sort_unstable_by(|a, b| b.cmp(a));
    }
    d
}

/// Compares an entry's listed facts with what was computed.
pub fn verify_expected(subject: &mut Subject, entry: &CorpusEntry) -> Result<Report> {
    let mut r = Report::new("expected", &entry.name, "");
    for e in &entry.expected {
        let got = match e.key {
            "simple dimensions" => format!("{:?}", subject.irr()?.dims()),
            "block defects" => format!("{:?}", defect_profile(&subject.blocks()?.blocks)),
            _ => continue,
        };
        r.push(e.key, got == e.value, format!("computed {got}, listed {} ({})", e.value, e.oracle));
    }
    Ok(r)
}

struct EntryResult {
    field: FieldInfo,
    reports: Vec<Report>,
    timings: Vec<Timing>,
}

fn run_entry(entry: &CorpusEntry, opts: &Options, cache: Option<&Cache>) -> EntryResult {
    let mut timings = Vec::new();
    let mut reports = Vec::new();
    let field = default_field(&entry.group);
    let info = |f: &SplittingField| FieldInfo {
        group: entry.name.clone(),
        degree: f.k(),
        m: f.m(),
    };
    let mut subject = match field {
        Ok(f) => Subject::with_field(&entry.group, f, opts.seed),
        Err(e) => {
            reports.push(error_report("field", &entry.name, "", &e));
            return EntryResult {
                field: FieldInfo {
                    group: entry.name.clone(),
                    degree: 0,
                    m: 0,
                },
                reports,
                timings,
            };
        }
    };
    let field = info(&subject.field);
    if entry.group.order() > opts.cap {
        reports.push(error_report(
            "cap",
            &entry.name,
            "",
            &Error::GroupTooLarge { cap: opts.cap },
        ));
    } else {
        if entry.expected.iter().any(|e| e.key != "self-dual multiplicity" && e.key != "trivial multiplicity") {
            let t = Instant::now();
            reports.push(
                verify_expected(&mut subject, entry)
                    .unwrap_or_else(|e| error_report("expected", &entry.name, "", &e)),
            );
            timings.push(Timing {
                entry: entry.name.clone(),
                check: "expected".into(),
                subgroup: String::new(),
                seconds: t.elapsed().as_secs_f64(),
                cached: false,
            });
        }
        for (c, sub) in plan(entry) {
            let t = Instant::now();
            let (r, cached) = run_cached(&mut subject, c, sub.as_ref(), cache);
            timings.push(Timing {
                entry: entry.name.clone(),
                check: c.name().into(),
                subgroup: sub.as_ref().map(|h| h.name().to_string()).unwrap_or_default(),
                seconds: t.elapsed().as_secs_f64(),
                cached,
            });
            reports.push(r);
        }
    }
    if let Some(p) = entry.muller {
        let t = Instant::now();
        let r = verify_muller(p, opts.cap)
            .unwrap_or_else(|e| error_report(&format!("subnormal-muller({p})"), &entry.name, "", &e));
        timings.push(Timing {
            entry: entry.name.clone(),
            check: "subnormal-muller".into(),
            subgroup: String::new(),
            seconds: t.elapsed().as_secs_f64(),
            cached: false,
        });
        reports.push(r);
    }
    EntryResult {
        field,
        reports,
        timings,
    }
}

/// Runs every applicable check on every entry, concurrently over entries up
/// to the worker cap; results keep corpus order.
pub fn run_entries(entries: &[CorpusEntry], opts: &Options, command: &str) -> Result<(RunReport, Vec<Timing>)> {
    let cache = match &opts.cache_dir {
        Some(d) => Some(Cache::new(d)?),
        None => None,
    };
    let slots: Vec<Mutex<Option<EntryResult>>> = entries.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = opts.workers.clamp(1, entries.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= entries.len() {
                    break;
                }
                let r = run_entry(&entries[i], opts, cache.as_ref());
                *slots[i].lock().expect("slot lock") = Some(r);
            });
        }
    });
    let mut run = RunReport::new(command, opts.seed);
    let mut timings = Vec::new();
    for slot in slots {
        let r = slot.into_inner().expect("slot lock").expect("every entry ran");
        run.fields.push(r.field);
        for rep in r.reports {
            run.add(rep);
        }
        timings.extend(r.timings);
    }
    Ok((run, timings))
}

pub fn run_suite(kind: CorpusKind, opts: &Options) -> Result<(RunReport, Vec<Timing>)> {
    let entries = corpus(kind)?;
    let name = match kind {
        CorpusKind::Default => "suite default",
        CorpusKind::Extended => "suite extended",
    };
    run_entries(&entries, opts, name)
}
