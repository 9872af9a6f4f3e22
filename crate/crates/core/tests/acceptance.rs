//! Acceptance gate: one PASS/FAIL line per criterion, all arithmetic exact.
//!
//! Criterion 9 (M22) runs only when `CHAR2_STRETCH=1` is set; otherwise it
//! prints SKIP. `char2 suite --stretch` runs the same items from the CLI.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::{Arc, OnceLock};
use std::time::Duration;

use char2::blk::BlockContext;
use char2::brc::radical_codimension;
use char2::cli::corpus::{default_corpus, CorpusEntry};
use char2::cli::stretch::{verify_m22, with_budget, DEFAULT_BUDGET};
use char2::cli::suite::{run_entries, Options, RunReport, Subject, Timing};
use char2::clf::{canonical_module, default_field, muller_family, PairContext};
use char2::fld::{Elt, SplittingField};
use char2::frm::{fong_form, quadratic_type};
use char2::grp::{named, Group};
use char2::rep::{chop, IrrSet, Representation};
use char2::report::Report;

struct Suite {
    entries: Vec<CorpusEntry>,
    run: RunReport,
    timings: Vec<Timing>,
}

fn suite() -> &'static Suite {
    static S: OnceLock<Suite> = OnceLock::new();
    S.get_or_init(|| {
        let entries = default_corpus().expect("default corpus");
        let (run, timings) = run_entries(&entries, &Options::default(), "suite default").expect("suite runs");
        Suite { entries, run, timings }
    })
}

fn reports(check: &str) -> Vec<&'static Report> {
    suite().run.checks.iter().filter(|r| r.check == check).collect()
}

/// Writes past the test harness's output capture so the line is always seen.
fn line(n: u32, ok: bool, detail: &str) -> bool {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {n}: {} ({detail}; tolerance 0, exact)", if ok { "PASS" } else { "FAIL" });
    ok
}

fn failures(rs: &[&Report]) -> Vec<String> {
    rs.iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} {} / {}", r.check, r.group, r.subgroup))
        .collect()
}

fn pair_count() -> usize {
    suite().entries.iter().map(|e| e.normals.len()).sum()
}

fn pair_seconds() -> BTreeMap<(String, String), f64> {
    let mut m = BTreeMap::new();
    for t in &suite().timings {
        if !t.subgroup.is_empty() && t.check != "subnormal" {
            *m.entry((t.entry.clone(), t.subgroup.clone())).or_insert(0.0) += t.seconds;
        }
    }
    m
}

fn pairs() -> Vec<(Group, Group)> {
    suite()
        .entries
        .iter()
        .flat_map(|e| e.normals.iter().map(move |n| (e.group.clone(), n.clone())))
        .collect()
}

#[test]
fn criterion_1_selfdual_existence() {
    let t1 = reports("T1");
    let fails = failures(&t1);
    let secs = pair_seconds();
    let worst = secs.values().cloned().fold(0.0, f64::max);
    let ok = fails.is_empty() && t1.len() == pair_count() && !t1.is_empty() && worst < 60.0;
    assert!(line(
        1,
        ok,
        &format!(
            "T1 on {} of {} pairs, failures {fails:?}, slowest pair {worst:.2} s of 60 s",
            t1.len(),
            pair_count()
        )
    ));
}

#[test]
fn criterion_2_unique_selfdual_extension() {
    let t2 = reports("T2");
    let mut fails = failures(&t2);
    let mut constructions = 0;
    let mut checked_pairs = 0;
    for (g, n) in pairs() {
        let mut subject = Subject::new(&g, 1).unwrap();
        let ctx: &PairContext = subject.pair(&n).unwrap();
        for i in (0..ctx.irr_n.len()).filter(|&i| ctx.self_dual_n(i)) {
            let w = &ctx.irr_n.simples[i].module;
            let cm = canonical_module(w, &g).unwrap();
            let sc = &cm.scaffold;
            let f = w.gf();
            constructions += 1;
            let tag = format!("{} / {} {}", g.name(), n.name(), ctx.irr_n.simples[i].label);
            for (x, (e, d)) in sc.epsilon.iter().zip(&sc.delta).enumerate() {
                if f.square(*d) != *e {
                    fails.push(format!("{tag}: δ² ≠ ε at {x}"));
                }
            }
            if sc.y.is_empty() {
                continue;
            }
            for (x, y) in sc.y.iter().enumerate() {
                let img = y.mul(&sc.form.gram).mul(&y.transpose());
                if img != sc.form.gram.scale(sc.lambda[x]) || f.square(sc.mu[x]) != sc.lambda[x] {
                    fails.push(format!("{tag}: λ or μ wrong at {x}"));
                }
            }
            for &(a, b, al) in &sc.alpha {
                let (a, b) = (a as usize, b as usize);
                let ab = sc.t.mul(a, b);
                checked_pairs += 1;
                if sc.y[ab] != sc.y[a].mul(&sc.y[b]).scale(al) {
                    fails.push(format!("{tag}: α fails at ({a},{b})"));
                }
                let lam = f.mul(f.square(al), f.mul(sc.lambda[a], sc.lambda[b]));
                if sc.lambda[ab] != lam {
                    fails.push(format!("{tag}: α_λ fails at ({a},{b})"));
                }
                let beta = f.div(f.mul(al, f.mul(sc.mu[a], sc.mu[b])), sc.mu[ab]);
                if beta != Elt::ONE {
                    fails.push(format!("{tag}: β ≠ 1 at ({a},{b})"));
                }
            }
        }
    }
    let ok = fails.is_empty() && t2.len() == pair_count() && constructions > 0;
    assert!(line(
        2,
        ok,
        &format!(
            "T2 on {} pairs, {constructions} extensions rebuilt, {checked_pairs} cocycle pairs rechecked, failures {fails:?}",
            t2.len()
        )
    ));
}

fn bits(x: u32) -> u32 {
    x.count_ones() % 2
}

/// Even-weight subsets of six points modulo the full set, as masks with the
/// last bit clear: the 4-dimensional heart of the permutation module.
fn heart_vectors() -> Vec<u32> {
    (0u32..32).filter(|&v| bits(v) == 0).collect()
}

fn act(v: u32, p: &[u32]) -> u32 {
    let mut w = 0;
    for (i, &pi) in p.iter().enumerate() {
        if v >> i & 1 == 1 {
            w |= 1 << pi;
        }
    }
    if w >> 5 & 1 == 1 {
        w ^ 0b11_1111
    } else {
        w
    }
}

/// Quadratic forms polarizing to `|u ∩ v| mod 2`, one per choice of values
/// on the basis `{i, i+1}`, that are invariant under `gens`.
fn brute_force_count(gens: &[Vec<u32>]) -> usize {
    let basis: Vec<u32> = (0..4).map(|i| 0b11 << i).collect();
    let form = |u: u32, v: u32| bits(u & v);
    let coords = |v: u32| -> Vec<u32> {
        // v = Σ x_i {i,i+1}: x_i is the parity of v on points 0..=i.
        (0..4).map(|i| bits(v & ((1 << (i + 1)) - 1))).collect()
    };
    (0u32..16)
        .filter(|d| {
            let q = |v: u32| {
                let x = coords(v);
                let mut s = 0;
                for i in 0..4 {
                    s ^= x[i] & (d >> i & 1);
                    for j in i + 1..4 {
                        s ^= x[i] & x[j] & form(basis[i], basis[j]);
                    }
                }
                s
            };
            gens.iter()
                .all(|p| heart_vectors().into_iter().all(|v| q(act(v, p)) == q(v)))
        })
        .count()
}

fn gf2_heart(g: &Group) -> Representation {
    let f = SplittingField::with_degree(1, 1);
    let p = Representation::permutation_module(g, &f);
    chop(&p)
        .unwrap()
        .factors
        .into_iter()
        .find(|fa| fa.module.dim() == 4)
        .unwrap()
        .module
}

#[test]
fn criterion_3_quadratic_type_transfer() {
    let mut fails = failures(&reports("T3"));
    fails.extend(failures(&reports("quad-criterion")));
    let transfer: Vec<_> = reports("T2")
        .iter()
        .flat_map(|r| r.items.iter().filter(|i| i.subject.ends_with("quadratic type")))
        .collect();
    fails.extend(transfer.iter().filter(|i| !i.ok).map(|i| i.detail.clone()));

    let s6 = named::symmetric(6).into_group();
    let a6 = Arc::new(s6.subgroup(named::alternating(6).gens().to_vec()).unwrap());
    let brute_s6 = brute_force_count(s6.gens());
    let brute_a6 = brute_force_count(a6.gens());
    let heart = gf2_heart(&s6);
    let solver_s6 = quadratic_type(&heart).unwrap().witness.is_some();
    let solver_a6 = quadratic_type(&heart.restrict(&a6).unwrap()).unwrap().witness.is_some();
    let sanity = brute_force_count(&[]);
    let ok = fails.is_empty()
        && !transfer.is_empty()
        && sanity == 16
        && brute_s6 == 0
        && brute_a6 == 0
        && !solver_s6
        && !solver_a6;
    assert!(line(
        3,
        ok,
        &format!(
            "T3 and quad-criterion on every pair, {} W ⇔ canonical comparisons, S6/A6 natural module: brute force {brute_s6}/{brute_a6} of {sanity} candidates invariant, solver quadratic {solver_s6}/{solver_a6}, failures {fails:?}",
            transfer.len()
        )
    ));
}

#[test]
fn criterion_4_odd_quotient_and_subnormal() {
    let mut fails = failures(&reports("odd-quotient"));
    fails.extend(failures(&reports("subnormal")));
    fails.extend(failures(&reports("subnormal-muller(3)")));
    let muller_secs: f64 = suite().timings.iter().filter(|t| t.entry == "Muller3").map(|t| t.seconds).sum();

    let fam = muller_family(3, 1_000_000).unwrap();
    let field = default_field(&fam.g).unwrap();
    let irr_g = IrrSet::compute(&fam.g, &field).unwrap();
    let irr_h = IrrSet::compute(&fam.h, &field).unwrap();
    let dual = irr_g.dual_map();
    let triv = irr_h.trivial_index();
    let mut found = Vec::new();
    for (k, phi) in irr_h.iter().enumerate().filter(|(_, u)| u.dim() == 2) {
        let mut odd = Vec::new();
        for (j, psi) in irr_g.iter().enumerate().filter(|(j, _)| dual[*j] == *j) {
            let res = psi.module.restrict(&fam.h).unwrap();
            let m = irr_h.composition_multiplicities(&res, 1).unwrap();
            if m[k] % 2 == 1 {
                odd.push((j, m[k], m[triv]));
            }
        }
        found.push((phi.label.clone(), odd));
    }
    let family_ok = !found.is_empty()
        && found
            .iter()
            .all(|(_, odd)| odd.len() == 1 && odd[0].1 == 3 && odd[0].2 == 2);
    let ok = fails.is_empty() && family_ok && muller_secs < 120.0 && !reports("subnormal").is_empty();
    let shown: Vec<String> = found
        .iter()
        .map(|(l, odd)| {
            let parts: Vec<String> = odd
                .iter()
                .map(|(j, e, t)| format!("{} e={e} trivial={t}", irr_g.simples[*j].label))
                .collect();
            format!("{l}: [{}]", parts.join(", "))
        })
        .collect();
    assert!(line(
        4,
        ok,
        &format!(
            "odd-quotient {} and subnormal {} reports, p=3 family {}, {muller_secs:.2} s of 120 s, failures {fails:?}",
            reports("odd-quotient").len(),
            reports("subnormal").len(),
            shown.join("; ")
        )
    ));
}

#[test]
fn criterion_5_fong_and_radical() {
    let mut fails = failures(&reports("fong"));
    fails.extend(failures(&reports("radical")));
    let mut forms = 0;
    let mut oracles = 0;
    for e in &suite().entries {
        let mut s = Subject::new(&e.group, 1).unwrap();
        let irr = s.irr().unwrap().clone();
        let dual = irr.dual_map();
        for (j, sm) in irr.iter().enumerate() {
            if dual[j] != j || sm.is_trivial() {
                continue;
            }
            let b = fong_form(&sm.module).unwrap().gram;
            let d = sm.dim();
            let alternating = (0..d).all(|i| b.get(i, i).is_zero()) && b == b.transpose();
            let invariant = sm.module.images().iter().all(|a| a.mul(&b).mul(&a.transpose()) == b);
            if d % 2 != 0 || !alternating || !invariant || b.rank() != d {
                fails.push(format!("{} {}", e.name, sm.label));
            }
            forms += 1;
        }
        let c = radical_codimension(&irr);
        let direct = irr.dims().iter().map(|d| d * d).sum::<usize>();
        if c.codimension != direct || direct % 2 == 0 {
            fails.push(format!("{} codimension {direct}", e.name));
        }
        if e.group.order() <= 100 {
            match c.oracle {
                Some(o) if o == direct => oracles += 1,
                other => fails.push(format!("{} annihilator {other:?} vs {direct}", e.name)),
            }
        }
    }
    let ok = fails.is_empty() && forms > 0;
    assert!(line(
        5,
        ok,
        &format!(
            "{forms} alternating forms rechecked, {} groups with odd Σθ(1)², {oracles} annihilator oracles agree, failures {fails:?}",
            suite().entries.len()
        )
    ));
}

#[test]
fn criterion_6_odd_height0() {
    let h0 = reports("height0");
    let fails = failures(&h0);
    let s3 = named::symmetric(3).into_group();
    let mut s = Subject::new(&s3, 1).unwrap();
    let bc: BlockContext = s.blocks().unwrap().clone();
    let phi = bc.phi.clone();
    let defects: Vec<u32> = bc.blocks.blocks.iter().map(|b| b.defect).collect();
    let fixture = phi == [2, 2] && defects == [1, 0];
    let ok = fails.is_empty() && fixture && h0.len() == suite().entries.len();
    assert!(line(
        6,
        ok,
        &format!(
            "height0 on {} groups, S3 Φ = {phi:?}, defects {defects:?}, failures {fails:?}",
            h0.len()
        )
    ));
}

#[test]
fn criterion_7_weakly_regular_coverers() {
    let t4 = reports("T4");
    let fails = failures(&t4);
    let items: usize = t4.iter().map(|r| r.items.len()).sum();
    let ok = fails.is_empty() && t4.len() == pair_count() && items > 0;
    assert!(line(
        7,
        ok,
        &format!("T4 on {} pairs, {items} block items, failures {fails:?}", t4.len())
    ));
}

#[test]
fn criterion_8_central_theta() {
    let ct = reports("central-theta");
    let fails = failures(&ct);
    let items: usize = ct.iter().map(|r| r.items.len()).sum();
    let ok = fails.is_empty() && ct.len() == suite().entries.len() && items > 0;
    assert!(line(
        8,
        ok,
        &format!(
            "central-theta on {} groups, {items} height-0 characters, failures {fails:?}",
            ct.len()
        )
    ));
}

#[test]
fn criterion_9_m22_stretch() {
    if std::env::var("CHAR2_STRETCH").map_or(true, |v| v.is_empty() || v == "0") {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "criterion 9: SKIP (stretch; set CHAR2_STRETCH=1)");
        return;
    }
    let budget = std::env::var("CHAR2_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .map_or(DEFAULT_BUDGET, Duration::from_secs);
    match with_budget(budget, || verify_m22(1)) {
        None => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "criterion 9: SKIP (budget of {} s exhausted)", budget.as_secs());
        }
        Some(r) => {
            let r = r.expect("M22 pipeline");
            let detail: Vec<String> = r.items.iter().map(|i| format!("{}: {}", i.subject, i.detail)).collect();
            assert!(line(9, r.passed(), &detail.join("; ")));
        }
    }
}

#[test]
fn suite_has_no_findings() {
    assert!(suite().run.passed(), "{:?}", suite().run.findings);
}
