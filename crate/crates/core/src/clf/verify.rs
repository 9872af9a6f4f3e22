use std::sync::{Arc, OnceLock};

use super::{canonical_module, muller_family};
use crate::error::{Error, Result};
use crate::fld::{field_for_group, SplittingField};
use crate::frm::quadratic_type;
use crate::grp::sub::{real_2regular_classes_in, subnormal_chain};
use crate::grp::Group;
use crate::report::Report;
use crate::rep::hom::hom_from_irreducible;
use crate::rep::IrrSet;

/// Simple modules of `G` and of a normal subgroup `N`, with the restriction
/// multiplicities and the conjugation action of `G` on the simples of `N`.
#[derive(Debug)]
pub struct PairContext {
    pub g: Group,
    pub n: Group,
    pub irr_g: IrrSet,
    pub irr_n: IrrSet,
    /// `mult[j][i]`: multiplicity of simple `i` of `N` in simple `j` of `G`
    /// restricted to `N`.
    pub mult: Vec<Vec<usize>>,
    pub dual_g: Vec<usize>,
    pub dual_n: Vec<usize>,
    /// `G`-orbit number of every simple of `N`.
    pub orbit_of: Vec<usize>,
    quad_g: Vec<OnceLock<Result<bool, String>>>,
    quad_n: Vec<OnceLock<Result<bool, String>>>,
}

fn quad(cell: &OnceLock<Result<bool, String>>, m: &crate::rep::Representation) -> Result<bool> {
    cell.get_or_init(|| {
        quadratic_type(m)
            .map(|q| q.witness.is_some())
            .map_err(|e| e.to_string())
    })
    .clone()
    .map_err(Error::Finding)
}

impl PairContext {
    pub fn new(g: &Group, n: &Group, field: &Arc<SplittingField>) -> Result<Self> {
        let irr_g = IrrSet::compute(g, field)?;
        let irr_n = if n.order() == g.order() {
            irr_g.clone()
        } else {
            IrrSet::compute(n, field)?
        };
        Self::from_sets(irr_g, irr_n)
    }

    pub fn from_sets(irr_g: IrrSet, irr_n: IrrSet) -> Result<Self> {
        let g = irr_g.group.clone();
        let n = irr_n.group.clone();
        if !g.is_normal(&n) {
            return Err(Error::NotNormal);
        }
        let mut mult = Vec::with_capacity(irr_g.len());
        for v in irr_g.iter() {
            let res = v.module.restrict(&n)?;
            let row: Vec<usize> = irr_n
                .iter()
                .map(|w| hom_from_irreducible(&w.module, &w.cert, &res).len())
                .collect();
            let total: usize = row.iter().zip(irr_n.iter()).map(|(e, w)| e * w.dim()).sum();
            if total != v.dim() {
                return Err(Error::Finding(format!(
                    "{}↓{} is not semisimple",
                    v.label,
                    n.name()
                )));
            }
            mult.push(row);
        }
        let nn = irr_n.len();
        let mut orbit_of: Vec<usize> = (0..nn).collect();
        if n.order() != g.order() {
            let mut next = vec![Vec::new(); nn];
            for (i, w) in irr_n.iter().enumerate() {
                for p in g.gens() {
                    let c = w.module.conjugate(p)?;
                    let k = irr_n.identify(&c).ok_or_else(|| {
                        Error::Finding(format!("conjugate of {} is not in the list", w.label))
                    })?;
                    next[i].push(k);
                }
            }
            let mut seen = vec![usize::MAX; nn];
            let mut id = 0;
            for s in 0..nn {
                if seen[s] != usize::MAX {
                    continue;
                }
                let mut stack = vec![s];
                seen[s] = id;
                while let Some(x) = stack.pop() {
                    for &y in &next[x] {
                        if seen[y] == usize::MAX {
                            seen[y] = id;
                            stack.push(y);
                        }
                    }
                }
                id += 1;
            }
            orbit_of = seen;
        }
        Ok(PairContext {
            dual_g: irr_g.dual_map(),
            dual_n: irr_n.dual_map(),
            quad_g: (0..irr_g.len()).map(|_| OnceLock::new()).collect(),
            quad_n: (0..nn).map(|_| OnceLock::new()).collect(),
            g,
            n,
            irr_g,
            irr_n,
            mult,
            orbit_of,
        })
    }

    pub fn self_dual_g(&self, j: usize) -> bool {
        self.dual_g[j] == j
    }

    pub fn self_dual_n(&self, i: usize) -> bool {
        self.dual_n[i] == i
    }

    /// Whether a non-trivial self-dual simple of `G` has quadratic type.
    pub fn quadratic_g(&self, j: usize) -> Result<bool> {
        quad(&self.quad_g[j], &self.irr_g.simples[j].module)
    }

    pub fn quadratic_n(&self, i: usize) -> Result<bool> {
        quad(&self.quad_n[i], &self.irr_n.simples[i].module)
    }

    pub fn is_real_orbit(&self, i: usize) -> bool {
        self.orbit_of[i] == self.orbit_of[self.dual_n[i]]
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_of.iter().max().map_or(0, |m| m + 1)
    }

    fn report(&self, check: &str) -> Report {
        Report::new(check, self.g.name(), self.n.name())
    }

    fn label_n(&self, i: usize) -> &str {
        &self.irr_n.simples[i].label
    }

    fn label_g(&self, j: usize) -> &str {
        &self.irr_g.simples[j].label
    }
}

/// Splitting field sized for the odd part of the exponent of `g`.
pub fn default_field(g: &Group) -> Result<Arc<SplittingField>> {
    field_for_group(g.odd_exponent())
}

/// A simple of `N` lies under a self-dual simple of `G` (with odd
/// multiplicity) exactly when its `G`-orbit contains its dual.
pub fn verify_t1(ctx: &PairContext) -> Result<Report> {
    let mut r = ctx.report("T1");
    for i in 0..ctx.irr_n.len() {
        let real = ctx.is_real_orbit(i);
        let under: Vec<usize> = (0..ctx.irr_g.len())
            .filter(|&j| ctx.self_dual_g(j) && ctx.mult[j][i] > 0)
            .collect();
        let odd: Vec<String> = under
            .iter()
            .filter(|&&j| ctx.mult[j][i] % 2 == 1)
            .map(|&j| format!("{} (e={})", ctx.label_g(j), ctx.mult[j][i]))
            .collect();
        let ok = real == !under.is_empty() && real == !odd.is_empty();
        r.push(
            ctx.label_n(i),
            ok,
            format!(
                "conjugate to dual: {}; self-dual witnesses with odd multiplicity: [{}]",
                real,
                odd.join(", ")
            ),
        );
    }
    let t = real_2regular_classes_in(&ctx.g, &ctx.n)?.len();
    let real_orbits = {
        let mut ids: Vec<usize> = (0..ctx.irr_n.len())
            .filter(|&i| ctx.is_real_orbit(i))
            .map(|i| ctx.orbit_of[i])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    };
    r.push(
        "counting",
        real_orbits == t,
        format!("{real_orbits} real orbits of simples of N, {t} real 2-regular classes of G in N"),
    );
    Ok(r)
}

/// Self-dual simples of `N`: the self-dual extension to the stabilizer is
/// unique, and the canonical module is the only self-dual simple of `G`
/// with odd multiplicity, which is 1.
pub fn verify_t2(ctx: &PairContext) -> Result<Report> {
    let mut r = ctx.report("T2");
    for i in (0..ctx.irr_n.len()).filter(|&i| ctx.self_dual_n(i)) {
        let w = &ctx.irr_n.simples[i];
        let cm = match canonical_module(&w.module, &ctx.g) {
            Ok(c) => c,
            Err(e) if e.is_finding() => {
                r.push(&w.label, false, e.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        let odd: Vec<usize> = (0..ctx.irr_g.len())
            .filter(|&j| ctx.self_dual_g(j) && ctx.mult[j][i] % 2 == 1)
            .collect();
        let canon = ctx.irr_g.identify(&cm.module);
        let ok = odd.len() == 1 && canon == Some(odd[0]) && ctx.mult[odd[0]][i] == 1;
        r.push(
            &w.label,
            ok,
            format!(
                "|T| = {}, extension twists checked: {}, canonical: {}, odd self-dual: [{}]",
                cm.stabilizer.t.order(),
                cm.scaffold.other_extensions,
                canon.map_or("?", |j| ctx.label_g(j)),
                odd.iter()
                    .map(|&j| format!("{} (e={})", ctx.label_g(j), ctx.mult[j][i]))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        );
        if let (Some(j), false) = (canon, w.is_trivial()) {
            let qw = ctx.quadratic_n(i)?;
            let qv = ctx.quadratic_g(j)?;
            r.push(
                format!("{} quadratic type", w.label),
                qw == qv,
                format!("W: {qw}, canonical {}: {qv}", ctx.label_g(j)),
            );
        }
    }
    Ok(r)
}

/// Non-quadratic self-dual simples of `G` not containing `N` in their
/// kernel restrict to multiplicity-free sums of non-quadratic self-dual
/// simples; larger multiplicities of self-dual simples are even and force
/// quadratic type.
pub fn verify_t3(ctx: &PairContext) -> Result<Report> {
    let mut r = ctx.report("T3");
    let triv_n = ctx.irr_n.trivial_index();
    for j in 0..ctx.irr_g.len() {
        let v = &ctx.irr_g.simples[j];
        if !ctx.self_dual_g(j) || v.is_trivial() {
            continue;
        }
        let qv = ctx.quadratic_g(j)?;
        if !qv && ctx.mult[j][triv_n] == 0 {
            let mut ok = true;
            let mut parts = Vec::new();
            for (i, &e) in ctx.mult[j].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let sd = ctx.self_dual_n(i);
                let q = if sd { Some(ctx.quadratic_n(i)?) } else { None };
                ok &= e == 1 && sd && q == Some(false);
                parts.push(format!("{}^{} self-dual={} quadratic={:?}", ctx.label_n(i), e, sd, q));
            }
            r.push(&v.label, ok, format!("non-quadratic; restriction: {}", parts.join(", ")));
        }
        for (i, &e) in ctx.mult[j].iter().enumerate() {
            if e > 1 && ctx.self_dual_n(i) {
                r.push(
                    format!("{} over {}", v.label, ctx.label_n(i)),
                    e % 2 == 0 && qv,
                    format!("multiplicity {e}, quadratic type {qv}"),
                );
            }
        }
    }
    if r.items.is_empty() {
        r.note("no non-quadratic self-dual simple module moves N");
    }
    Ok(r)
}

fn non_quadratic(irr: &IrrSet, quad: impl Fn(usize) -> Result<bool>) -> Result<Vec<String>> {
    let dual = irr.dual_map();
    let mut out = Vec::new();
    for (j, s) in irr.iter().enumerate() {
        if dual[j] == j && !s.is_trivial() && !quad(j)? {
            out.push(s.label.clone());
        }
    }
    Ok(out)
}

/// All non-trivial self-dual simples of `G` have quadratic type iff the
/// same holds for `N` and for `G/N`.
pub fn verify_quadratic_criterion(ctx: &PairContext) -> Result<Report> {
    let mut r = ctx.report("quad-criterion");
    let bad_g = non_quadratic(&ctx.irr_g, |j| ctx.quadratic_g(j))?;
    let bad_n = non_quadratic(&ctx.irr_n, |i| ctx.quadratic_n(i))?;
    let q: Group = Arc::new(ctx.g.quotient(&ctx.n)?);
    let irr_q = IrrSet::compute(&q, &ctx.irr_g.field)?;
    let bad_q = non_quadratic(&irr_q, |k| {
        Ok(quadratic_type(&irr_q.simples[k].module)?.witness.is_some())
    })?;
    let lhs = bad_g.is_empty();
    let rhs = bad_n.is_empty() && bad_q.is_empty();
    r.push(
        "criterion",
        lhs == rhs,
        format!(
            "non-quadratic in G: [{}]; in N: [{}]; in G/N (order {}): [{}]",
            bad_g.join(", "),
            bad_n.join(", "),
            q.order(),
            bad_q.join(", ")
        ),
    );
    Ok(r)
}

/// For `|G:N|` odd: induction and restriction match self-dual simples of
/// `G` with `G`-orbits of self-dual simples of `N`.
pub fn verify_odd_quotient(ctx: &PairContext) -> Result<Report> {
    let index = ctx.g.order() / ctx.n.order();
    if index.is_multiple_of(2) {
        return Err(Error::Precondition(format!("|G:N| = {index} is even")));
    }
    let mut r = ctx.report("odd-quotient");
    for i in (0..ctx.irr_n.len()).filter(|&i| ctx.self_dual_n(i)) {
        let w = &ctx.irr_n.simples[i];
        let up = w.module.induce(&ctx.g)?;
        let cm = ctx.irr_g.composition_multiplicities(&up, 5)?;
        let sd: Vec<&str> = (0..ctx.irr_g.len())
            .filter(|&j| cm[j] > 0 && ctx.self_dual_g(j))
            .map(|j| ctx.label_g(j))
            .collect();
        r.push(
            format!("{}↑G", w.label),
            sd.len() == 1,
            format!("self-dual composition factors: [{}]", sd.join(", ")),
        );
    }
    let mut sd_g = 0;
    for j in (0..ctx.irr_g.len()).filter(|&j| ctx.self_dual_g(j)) {
        sd_g += 1;
        let parts: Vec<(usize, usize)> = ctx.mult[j]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        let ok = parts.iter().all(|&(i, e)| e == 1 && ctx.self_dual_n(i));
        r.push(
            format!("{}↓N", ctx.label_g(j)),
            ok,
            parts
                .iter()
                .map(|&(i, e)| format!("{}^{}", ctx.label_n(i), e))
                .collect::<Vec<_>>()
                .join(" + "),
        );
    }
    let mut sd_orbits: Vec<usize> = (0..ctx.irr_n.len())
        .filter(|&i| ctx.self_dual_n(i))
        .map(|i| ctx.orbit_of[i])
        .collect();
    sd_orbits.sort_unstable();
    sd_orbits.dedup();
    r.push(
        "correspondence",
        sd_g == sd_orbits.len(),
        format!("{} self-dual simples of G, {} orbits of self-dual simples of N", sd_g, sd_orbits.len()),
    );
    Ok(r)
}

/// Composition multiplicities of every simple of `H` in every simple of
/// `G` restricted to `H`.
pub fn restriction_table(irr_g: &IrrSet, irr_h: &IrrSet) -> Result<Vec<Vec<usize>>> {
    irr_g
        .iter()
        .map(|v| irr_h.composition_multiplicities(&v.module.restrict(&irr_h.group)?, 7))
        .collect()
}

/// For `H` subnormal in `G`, every self-dual simple of `H` has exactly one
/// self-dual simple of `G` over it with odd multiplicity.
pub fn verify_subnormal(irr_g: &IrrSet, irr_h: &IrrSet) -> Result<Report> {
    let g = &irr_g.group;
    let h = &irr_h.group;
    let chain = subnormal_chain(g, h)?;
    let mut r = Report::new("subnormal", g.name(), h.name());
    r.note(format!(
        "normal series: {}",
        std::iter::once(h.order())
            .chain(chain.chain.iter().map(|c| c.order()))
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(" ◁ ")
    ));
    let table = restriction_table(irr_g, irr_h)?;
    let dual_g = irr_g.dual_map();
    let dual_h = irr_h.dual_map();
    for (k, u) in irr_h.iter().enumerate() {
        if dual_h[k] != k {
            continue;
        }
        let odd: Vec<String> = (0..irr_g.len())
            .filter(|&j| dual_g[j] == j && table[j][k] % 2 == 1)
            .map(|j| format!("{} (e={})", irr_g.simples[j].label, table[j][k]))
            .collect();
        r.push(
            &u.label,
            odd.len() == 1,
            format!("self-dual simples with odd multiplicity: [{}]", odd.join(", ")),
        );
    }
    Ok(r)
}

/// The subnormal check on the family `E ⋊ ZS ⊳ ... ⊳ F e2 ⋊ <t>`, with the
/// predicted multiplicities `s - 1` of each 2-dimensional simple of `H` and
/// `p - 1` of the trivial module in the canonical module.
pub fn verify_muller(p: u32, cap: usize) -> Result<Report> {
    let fam = muller_family(p, cap)?;
    let field = default_field(&fam.g)?;
    let irr_g = IrrSet::compute(&fam.g, &field)?;
    let irr_h = IrrSet::compute(&fam.h, &field)?;
    let mut r = verify_subnormal(&irr_g, &irr_h)?;
    r.check = format!("subnormal-muller({p})");
    let table = restriction_table(&irr_g, &irr_h)?;
    let dual_g = irr_g.dual_map();
    let triv_h = irr_h.trivial_index();
    for (k, u) in irr_h.iter().enumerate().filter(|(_, u)| u.dim() == 2) {
        let odd: Vec<usize> = (0..irr_g.len())
            .filter(|&j| dual_g[j] == j && table[j][k] % 2 == 1)
            .collect();
        let Some(&psi) = odd.first() else {
            r.push(format!("{} expected", u.label), false, "no canonical module");
            continue;
        };
        let e = table[psi][k] as u64;
        let triv = table[psi][triv_h] as u64;
        r.push(
            format!("{} expected", u.label),
            e == fam.expected_u && triv == fam.expected_trivial,
            format!(
                "ψ = {}: multiplicity {} (expected s-1 = {}), trivial multiplicity {} (expected p-1 = {})",
                irr_g.simples[psi].label, e, fam.expected_u, triv, fam.expected_trivial
            ),
        );
    }
    Ok(r)
}
