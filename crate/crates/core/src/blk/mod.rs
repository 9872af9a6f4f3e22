//! 2-blocks: the center of FG, block idempotents, central characters,
//! defects, covering and the block verifiers.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::brc::{brauer_table, pim_degrees, BrauerTable};
use crate::clf::PairContext;
use crate::error::{Error, Result};
use crate::fld::{v2, Cyclotomic, Elt, Gf2k, Poly, SplittingField};
use crate::frm::quadratic_type;
use crate::grp::{perm, Group};
use crate::mat::{row_get, row_set, words_for, Mat};
use crate::report::Report;
use crate::rep::{IrrSet, Representation};

/// Groups up to this order get the idempotent-rank cross-check on dim(B).
pub const IDEMPOTENT_RANK_LIMIT: usize = 200;

/// Z(FG) in the basis of class sums, with structure constants mod 2.
#[derive(Clone, Debug)]
pub struct Center {
    pub group: Group,
    pub field: Gf2k,
    k: usize,
    /// `table[i * k + j]` lists the classes `l` with `a_ijl` odd.
    table: Vec<Vec<u16>>,
}

impl Center {
    pub fn new(g: &Group, f: &Gf2k) -> Self {
        let cl = g.classes();
        let k = cl.len();
        let inv: Vec<usize> = (0..g.order()).map(|x| g.inv(x)).collect();
        let mut odd = vec![false; k * k * k];
        for (l, c) in cl.list.iter().enumerate() {
            for (x, &xi) in inv.iter().enumerate() {
                let i = cl.of(x);
                let j = cl.of(g.mul(xi, c.rep));
                odd[(i * k + j) * k + l] ^= true;
            }
        }
        let table = (0..k * k)
            .map(|ij| (0..k).filter(|&l| odd[ij * k + l]).map(|l| l as u16).collect())
            .collect();
        Center {
            group: g.clone(),
            field: f.clone(),
            k,
            table,
        }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn zero(&self) -> Vec<Elt> {
        vec![Elt::ZERO; self.k]
    }

    pub fn one(&self) -> Vec<Elt> {
        self.class_sum(self.group.classes().of(0))
    }

    pub fn class_sum(&self, c: usize) -> Vec<Elt> {
        let mut v = self.zero();
        v[c] = Elt::ONE;
        v
    }

    /// Whether `C_i^+ C_j^+` has odd coefficient at `C_l^+`.
    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> bool {
        self.table[i * self.k + j].contains(&(l as u16))
    }

    pub fn mul(&self, x: &[Elt], y: &[Elt]) -> Vec<Elt> {
        let f = &self.field;
        let mut z = self.zero();
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = f.mul(a, b);
                for &l in &self.table[i * self.k + j] {
                    z[l as usize] += ab;
                }
            }
        }
        z
    }

    pub fn pow(&self, x: &[Elt], mut e: u64) -> Vec<Elt> {
        let mut acc = self.one();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Exponent `s` with `2^s` at least the dimension, so that `n^(2^s) = 0`
    /// for every nilpotent `n`.
    fn nil_exponent(&self) -> u32 {
        (self.k.max(1) as u64).next_power_of_two().trailing_zeros()
    }

    fn frobenius(&self, x: &[Elt], s: u32) -> Vec<Elt> {
        (0..s).fold(x.to_vec(), |y, _| self.mul(&y, &y))
    }

    /// The evaluation `ω(z) = Σ β(z, C) ω(C^+)`.
    pub fn evaluate(&self, omega: &[Elt], z: &[Elt]) -> Elt {
        z.iter()
            .zip(omega)
            .fold(Elt::ZERO, |acc, (&a, &w)| acc + self.field.mul(a, w))
    }

    /// Minimal polynomial of `x` by the Krylov sequence of its powers.
    pub fn minimal_polynomial(&self, x: &[Elt]) -> Poly {
        let f = &self.field;
        let mut powers = vec![self.one()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), x);
            powers.push(next);
            let ns = Mat::from_rows(f, &powers).left_nullspace();
            if ns.rows() > 0 {
                return Poly::from_coeffs(ns.row_elts(0)).monic(f);
            }
        }
    }

    /// For each eigenvalue `λ` of multiplication by `x`, the idempotent
    /// `1 - (x - λ)^((q-1) q^N)` cutting out its generalized eigenspace.
    pub fn eigen_idempotents(&self, x: &[Elt]) -> Vec<(Elt, Vec<Elt>)> {
        let f = &self.field;
        let s = self.nil_exponent();
        let q1 = f.order() - 1;
        self.minimal_polynomial(x)
            .roots(f)
            .into_iter()
            .map(|lam| {
                let mut y = x.to_vec();
                let id = self.group.classes().of(0);
                y[id] += lam;
                let t = self.frobenius(&self.pow(&y, q1), s * f.k() as u32);
                let mut e = self.one();
                for (a, b) in e.iter_mut().zip(&t) {
                    *a += *b;
                }
                (lam, e)
            })
            .collect()
    }

    /// The matrix of `h ↦ h z` on FG in the element basis.
    pub fn regular_matrix(&self, z: &[Elt]) -> Mat {
        let g = &self.group;
        let cl = g.classes();
        let n = g.order();
        let mut m = Mat::zero(&self.field, n, n);
        for (c, &b) in z.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            for &y in &cl.list[c].members {
                for h in 0..n {
                    let col = g.mul(h, y);
                    let v = m.get(h, col) + b;
                    m.set(h, col, v);
                }
            }
        }
        m
    }
}

fn is_zero(v: &[Elt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[derive(Clone, Debug)]
pub struct BlockData {
    pub label: String,
    /// `β(e_B, C)` for every class `C`.
    pub idempotent: Vec<Elt>,
    /// `ω_B(C^+)` for every class `C`.
    pub omega: Vec<Elt>,
    pub defect: u32,
    /// Indices into the simple list, filled by [`Blocks::compute`].
    pub members: Vec<usize>,
    pub simples: Vec<String>,
    pub is_principal: bool,
    pub contragredient: usize,
    pub contragredient_label: String,
}

impl BlockData {
    pub fn is_real(&self) -> bool {
        self.label == self.contragredient_label
    }
}

/// `ω(C^+)` from an idempotent alone: on `Z e` the element `C^+ e - λ e` is
/// nilpotent, so `(C^+ e)^(2^s) = λ^(2^s) e`.
pub fn central_character(center: &Center, e: &[Elt]) -> Result<Vec<Elt>> {
    let f = &center.field;
    let s = center.nil_exponent();
    let l = e
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::InvalidInput("zero idempotent".into()))?;
    let mut omega = Vec::with_capacity(center.dim());
    for c in 0..center.dim() {
        let ce = center.mul(&center.class_sum(c), e);
        let p = center.frobenius(&ce, s);
        let mut lam = f.div(p[l], e[l]);
        for _ in 0..s {
            lam = f.sqrt(lam);
        }
        let mut n = ce;
        for (a, b) in n.iter_mut().zip(e) {
            *a += f.mul(lam, *b);
        }
        if !is_zero(&center.frobenius(&n, s)) {
            return Err(Error::Finding(format!(
                "class {c} does not act on the block by a single eigenvalue"
            )));
        }
        omega.push(lam);
    }
    Ok(omega)
}

/// `d(B)` from the central character (least defect of a class with
/// `ω_B(C^+) ≠ 0`) and from the idempotent support (largest defect of a
/// class with `β(e_B, C) ≠ 0`).
pub fn defect(g: &Group, omega: &[Elt], idempotent: &[Elt]) -> Result<u32> {
    let cl = g.classes();
    let by_omega = (0..cl.len())
        .filter(|&c| !omega[c].is_zero())
        .map(|c| cl.list[c].defect)
        .min();
    let by_support = (0..cl.len())
        .filter(|&c| !idempotent[c].is_zero())
        .map(|c| cl.list[c].defect)
        .max();
    match (by_omega, by_support) {
        (Some(a), Some(b)) if a == b => Ok(a),
        (a, b) => Err(Error::Finding(format!(
            "defect from ω is {a:?} but from the idempotent support is {b:?}"
        ))),
    }
}

/// The primitive idempotents of Z(FG), by sweeping through the class sums
/// and splitting along the eigenvalues of each multiplication operator.
/// The principal block comes first.
pub fn block_idempotents(center: &Center) -> Result<Vec<BlockData>> {
    let g = &center.group;
    let f = &center.field;
    let cl = g.classes();
    let k = center.dim();
    let mut parts: Vec<(Vec<Elt>, Vec<Elt>)> = vec![(center.one(), vec![Elt::ZERO; k])];
    for c in 0..k {
        let split = center.eigen_idempotents(&center.class_sum(c));
        let mut next = Vec::with_capacity(parts.len());
        for (e, om) in &parts {
            for (lam, p) in &split {
                let ep = center.mul(e, p);
                if !is_zero(&ep) {
                    let mut om = om.clone();
                    om[c] = *lam;
                    next.push((ep, om));
                }
            }
        }
        parts = next;
    }
    let mut total = center.zero();
    for (e, _) in &parts {
        for (a, b) in total.iter_mut().zip(e) {
            *a += *b;
        }
    }
    if total != center.one() {
        return Err(Error::Finding(format!(
            "block idempotents of {} do not sum to 1; the field GF(2^{}) may not split Z(FG)",
            g.name(),
            f.k()
        )));
    }
    for (i, (a, _)) in parts.iter().enumerate() {
        for (j, (b, _)) in parts.iter().enumerate() {
            let ab = center.mul(a, b);
            let want = if i == j { a.clone() } else { center.zero() };
            if ab != want {
                return Err(Error::Finding(format!(
                    "block idempotents {i} and {j} are not orthogonal idempotents"
                )));
            }
        }
    }
    let principal_omega: Vec<Elt> = cl
        .list
        .iter()
        .map(|c| if c.size() % 2 == 1 { Elt::ONE } else { Elt::ZERO })
        .collect();
    parts.sort_by(|a, b| {
        (a.1 != principal_omega)
            .cmp(&(b.1 != principal_omega))
            .then_with(|| a.0.cmp(&b.0))
    });
    if parts[0].1 != principal_omega {
        return Err(Error::Finding("no block has the central character of the trivial module".into()));
    }
    let mut blocks = Vec::with_capacity(parts.len());
    for (i, (e, om)) in parts.iter().enumerate() {
        let direct = central_character(center, e)?;
        if &direct != om {
            return Err(Error::Finding(format!("central character of B{i} disagrees with the sweep")));
        }
        if !center.evaluate(om, e).is_zero() && center.evaluate(om, e) != Elt::ONE {
            return Err(Error::Finding(format!("ω(e) is not 0 or 1 for B{i}")));
        }
        blocks.push(BlockData {
            label: format!("B{i}"),
            idempotent: e.clone(),
            omega: om.clone(),
            defect: defect(g, om, e)?,
            members: Vec::new(),
            simples: Vec::new(),
            is_principal: i == 0,
            contragredient: usize::MAX,
            contragredient_label: String::new(),
        });
    }
    for i in 0..blocks.len() {
        let t = transport_inverse(g, &blocks[i].idempotent);
        let j = blocks
            .iter()
            .position(|b| b.idempotent == t)
            .ok_or_else(|| Error::Finding(format!("inverse transport of B{i} is not a block idempotent")))?;
        blocks[i].contragredient = j;
        blocks[i].contragredient_label = format!("B{j}");
    }
    Ok(blocks)
}

/// Coefficients moved along class inversion: `β(z°, C) = β(z, C°)`.
fn transport_inverse(g: &Group, z: &[Elt]) -> Vec<Elt> {
    let cl = g.classes();
    (0..z.len()).map(|c| z[cl.class_inverse(c)]).collect()
}

/// `ω_M(C^+)` for a simple module `M` and every class, from the action of
/// the class sums on the first basis vector.
pub fn class_scalars(m: &Representation) -> Result<Vec<Elt>> {
    let g = m.group();
    let gf = m.gf();
    let cl = g.classes();
    let start = Mat::identity(gf, m.dim()).row(0).to_vec();
    let mut orbit: Vec<Vec<u64>> = Vec::with_capacity(g.order());
    orbit.push(start);
    for i in 1..g.order() {
        let (p, gi) = g.parent(i).expect("non-identity has a parent");
        let v = m.images()[gi].vec_mul(&orbit[p]);
        orbit.push(v);
    }
    let words = orbit[0].len();
    let k = gf.k();
    let vw = words_for(m.dim());
    let mut out = Vec::with_capacity(cl.len());
    for c in &cl.list {
        let mut s = vec![0u64; words];
        for &x in &c.members {
            for (a, b) in s.iter_mut().zip(&orbit[x]) {
                *a ^= *b;
            }
        }
        let lam = row_get(&s, k, vw, 0);
        let mut want = vec![0u64; words];
        row_set(&mut want, k, vw, 0, lam);
        if s != want {
            return Err(Error::Finding(format!(
                "class sum of {} does not act as a scalar on {}",
                perm::to_cycles(g.elt(c.rep)),
                m.label()
            )));
        }
        out.push(lam);
    }
    Ok(out)
}

/// The unique block whose idempotent acts as the identity on `m`.
pub fn assign_block(center: &Center, blocks: &[BlockData], m: &Representation) -> Result<usize> {
    assign_with(center, blocks, &class_scalars(m)?, m.label())
}

fn assign_with(center: &Center, blocks: &[BlockData], scalars: &[Elt], label: &str) -> Result<usize> {
    let acting: Vec<Elt> = blocks.iter().map(|b| center.evaluate(scalars, &b.idempotent)).collect();
    let ones: Vec<usize> = (0..blocks.len()).filter(|&i| acting[i] == Elt::ONE).collect();
    let stray = acting.iter().any(|a| !a.is_zero() && *a != Elt::ONE);
    if ones.len() != 1 || stray {
        return Err(Error::Finding(format!(
            "{label}: block idempotents act by {acting:?}"
        )));
    }
    let b = ones[0];
    if blocks[b].omega != scalars {
        return Err(Error::Finding(format!(
            "{label}: central character differs from that of {}",
            blocks[b].label
        )));
    }
    Ok(b)
}

/// The blocks of a group with its simples assigned.
#[derive(Clone, Debug)]
pub struct Blocks {
    pub group: Group,
    pub field: Arc<SplittingField>,
    pub center: Center,
    pub blocks: Vec<BlockData>,
    /// Block of every simple, indexed like the [`IrrSet`].
    pub block_of: Vec<usize>,
}

impl Blocks {
    pub fn compute(irr: &IrrSet) -> Result<Self> {
        let g = irr.group.clone();
        let center = Center::new(&g, irr.field.gf());
        let mut blocks = block_idempotents(&center)?;
        let mut block_of = Vec::with_capacity(irr.len());
        for s in irr.iter() {
            let b = assign_with(&center, &blocks, &class_scalars(&s.module)?, &s.label)?;
            block_of.push(b);
        }
        for (j, &b) in block_of.iter().enumerate() {
            blocks[b].members.push(j);
            blocks[b].simples.push(irr.simples[j].label.clone());
        }
        if let Some(b) = blocks.iter().find(|b| b.members.is_empty()) {
            return Err(Error::Finding(format!("{} contains no simple module", b.label)));
        }
        if block_of[irr.trivial_index()] != 0 {
            return Err(Error::Finding("trivial module is outside the principal block".into()));
        }
        let dual = irr.dual_map();
        for (j, &b) in block_of.iter().enumerate() {
            if block_of[dual[j]] != blocks[b].contragredient {
                return Err(Error::Finding(format!(
                    "dual of {} lies in {}, but the transported idempotent gives {}",
                    irr.simples[j].label,
                    blocks[block_of[dual[j]]].label,
                    blocks[b].contragredient_label
                )));
            }
        }
        Ok(Blocks {
            field: irr.field.clone(),
            group: g,
            center,
            blocks,
            block_of,
        })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contragredient(&self, b: usize) -> usize {
        self.blocks[b].contragredient
    }

    pub fn is_real(&self, b: usize) -> bool {
        self.blocks[b].contragredient == b
    }

    /// `dim(FG e_B)` as the rank of right multiplication by `e_B`.
    pub fn idempotent_rank(&self, b: usize) -> usize {
        self.center.regular_matrix(&self.blocks[b].idempotent).rank()
    }

    pub fn export(&self) -> BlocksExport {
        let cl = self.group.classes();
        let names: Vec<String> = cl.list.iter().map(|c| perm::to_cycles(self.group.elt(c.rep))).collect();
        BlocksExport {
            group: self.group.name().to_string(),
            order: self.group.order(),
            field_degree: self.field.k(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockExport {
                    label: b.label.clone(),
                    defect: b.defect,
                    principal: b.is_principal,
                    real: b.is_real(),
                    contragredient: b.contragredient_label.clone(),
                    simples: b.simples.clone(),
                    support: (0..cl.len())
                        .filter(|&c| !b.idempotent[c].is_zero())
                        .map(|c| format!("{}:{}", names[c], b.idempotent[c]))
                        .collect(),
                    omega: (0..cl.len()).map(|c| format!("{}:{}", names[c], b.omega[c])).collect(),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let e = self.export();
        let mut s = format!(
            "2-blocks of {} (order {}, over GF(2^{}))\n",
            e.group, e.order, e.field_degree
        );
        for b in &e.blocks {
            let _ = writeln!(
                s,
                "{}{}: defect {}, {}, simples [{}]",
                b.label,
                if b.principal { " (principal)" } else { "" },
                b.defect,
                if b.real { "real".to_string() } else { format!("dual {}", b.contragredient) },
                b.simples.join(", ")
            );
            let _ = writeln!(s, "  support {}", b.support.join(" "));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockExport {
    pub label: String,
    pub defect: u32,
    pub principal: bool,
    pub real: bool,
    pub contragredient: String,
    pub simples: Vec<String>,
    /// `class:β(e_B, C)` for the classes in the support.
    pub support: Vec<String>,
    /// `class:ω_B(C^+)`.
    pub omega: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlocksExport {
    pub group: String,
    pub order: usize,
    pub field_degree: usize,
    pub blocks: Vec<BlockExport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringRecord {
    pub block_of_g: String,
    pub block_of_n: String,
    pub covers: bool,
    pub weakly_regular: bool,
}

/// The covering relation between the blocks of `G` and of a normal `N`.
#[derive(Clone, Debug)]
pub struct Covering {
    /// `covers[B][b]`.
    pub covers: Vec<Vec<bool>>,
    /// `G`-orbit number of every block of `N`.
    pub n_orbit: Vec<usize>,
    /// `e_b^G` in the class-sum basis of Z(FG).
    pub egb: Vec<Vec<Elt>>,
    /// Weakly regular coverers of every block of `N`.
    pub weakly_regular: Vec<Vec<usize>>,
    pub records: Vec<CoveringRecord>,
}

/// `e^s` for an element of Z(FN) and `s ∈ G`, by permuting the classes of `N`.
pub fn conjugate_central(n: &Group, e: &[Elt], s: &[u32]) -> Vec<Elt> {
    let cl = n.classes();
    let mut out = vec![Elt::ZERO; e.len()];
    for c in &cl.list {
        let y = n
            .find(&perm::conjugate(n.elt(c.rep), s))
            .expect("normal subgroup is closed under conjugation");
        out[cl.of(y)] = e[c.index];
    }
    out
}

/// For every class of `G`, the class of `N` containing its representative.
fn g_class_in_n(g: &Group, n: &Group) -> Vec<Option<usize>> {
    g.classes()
        .list
        .iter()
        .map(|c| n.find(g.elt(c.rep)).map(|x| n.classes().of(x)))
        .collect()
}

pub fn covering(ctx: &PairContext, gb: &Blocks, nb: &Blocks) -> Result<Covering> {
    let (g, n) = (&ctx.g, &ctx.n);
    let nbl = nb.len();
    let mut next = vec![Vec::new(); nbl];
    for (i, b) in nb.blocks.iter().enumerate() {
        for s in g.gens() {
            let t = conjugate_central(n, &b.idempotent, s);
            let j = nb
                .blocks
                .iter()
                .position(|x| x.idempotent == t)
                .ok_or_else(|| Error::Finding(format!("conjugate of {} is not a block idempotent", b.label)))?;
            next[i].push(j);
        }
    }
    let mut n_orbit = vec![usize::MAX; nbl];
    let mut id = 0;
    for s in 0..nbl {
        if n_orbit[s] != usize::MAX {
            continue;
        }
        n_orbit[s] = id;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &next[x] {
                if n_orbit[y] == usize::MAX {
                    n_orbit[y] = id;
                    stack.push(y);
                }
            }
        }
        id += 1;
    }
    let in_n = g_class_in_n(g, n);
    let egb: Vec<Vec<Elt>> = (0..nbl)
        .map(|i| {
            let mut sum = nb.center.zero();
            for j in (0..nbl).filter(|&j| n_orbit[j] == n_orbit[i]) {
                for (a, b) in sum.iter_mut().zip(&nb.blocks[j].idempotent) {
                    *a += *b;
                }
            }
            in_n.iter().map(|c| c.map_or(Elt::ZERO, |c| sum[c])).collect()
        })
        .collect();
    let mut covers = vec![vec![false; nbl]; gb.len()];
    for (bi, bd) in gb.blocks.iter().enumerate() {
        for i in 0..nbl {
            let prod = gb.center.mul(&bd.idempotent, &egb[i]);
            let by_idem = prod == bd.idempotent;
            let by_omega = gb.center.evaluate(&bd.omega, &egb[i]) == Elt::ONE;
            let by_restriction = bd.members.iter().any(|&j| {
                nb.blocks[i].members.iter().any(|&w| ctx.mult[j][w] > 0)
            });
            if by_idem != by_omega || by_idem != by_restriction {
                return Err(Error::Finding(format!(
                    "{} over {}: idempotent {by_idem}, central character {by_omega}, restriction {by_restriction}",
                    bd.label, nb.blocks[i].label
                )));
            }
            covers[bi][i] = by_idem;
        }
    }
    let weakly_regular: Vec<Vec<usize>> = (0..nbl)
        .map(|i| {
            let cov: Vec<usize> = (0..gb.len()).filter(|&b| covers[b][i]).collect();
            let top = cov.iter().map(|&b| gb.blocks[b].defect).max();
            cov.into_iter().filter(|&b| Some(gb.blocks[b].defect) == top).collect()
        })
        .collect();
    let mut records = Vec::new();
    for (bi, bd) in gb.blocks.iter().enumerate() {
        for (i, b) in nb.blocks.iter().enumerate() {
            records.push(CoveringRecord {
                block_of_g: bd.label.clone(),
                block_of_n: b.label.clone(),
                covers: covers[bi][i],
                weakly_regular: weakly_regular[i].contains(&bi),
            });
        }
    }
    Ok(Covering {
        covers,
        n_orbit,
        egb,
        weakly_regular,
        records,
    })
}

/// Covering blocks of maximal defect over block `b` of `N`.
pub fn weakly_regular_blocks(cov: &Covering, b: usize) -> &[usize] {
    &cov.weakly_regular[b]
}

fn labels(blocks: &Blocks, idx: &[usize]) -> String {
    idx.iter().map(|&b| blocks.blocks[b].label.as_str()).collect::<Vec<_>>().join(", ")
}

/// Odd number of weakly regular coverers, the real coverer criterion and its
/// uniqueness, and the classwise `β ω` identity.
pub fn verify_t4(ctx: &PairContext) -> Result<Report> {
    let gb = Blocks::compute(&ctx.irr_g)?;
    let nb = if ctx.n.order() == ctx.g.order() {
        gb.clone()
    } else {
        Blocks::compute(&ctx.irr_n)?
    };
    let cov = covering(ctx, &gb, &nb)?;
    let (g, n) = (&ctx.g, &ctx.n);
    let mut r = Report::new("T4", g.name(), n.name());
    let gf = &gb.center.field;
    let gcl = g.classes();
    let in_n = g_class_in_n(g, n);
    // ω_b(C^+) for a class C of G inside N is the sum over the N-classes in C.
    let n_to_g: Vec<usize> = n
        .classes()
        .list
        .iter()
        .map(|c| gcl.of(g.find(n.elt(c.rep)).expect("N is a subgroup")))
        .collect();
    for (i, b) in nb.blocks.iter().enumerate() {
        let wr = weakly_regular_blocks(&cov, i);
        let real_wr: Vec<usize> = wr.iter().copied().filter(|&x| gb.is_real(x)).collect();
        let bo = nb.contragredient(i);
        let conj = cov.n_orbit[i] == cov.n_orbit[bo];
        let subject = b.label.clone();
        r.push(
            format!("{subject} count"),
            wr.len() % 2 == 1,
            format!("weakly regular coverers [{}] ({})", labels(&gb, wr), wr.len()),
        );
        r.push(
            format!("{subject} real"),
            real_wr.is_empty() != conj,
            format!(
                "b° = {}, G-conjugate: {conj}; real weakly regular coverers [{}]",
                nb.blocks[bo].label,
                labels(&gb, &real_wr)
            ),
        );
        if bo == i {
            r.push(
                format!("{subject} unique"),
                real_wr.len() == 1,
                format!("{} real weakly regular coverer(s)", real_wr.len()),
            );
        }
        let mut omega_b = vec![Elt::ZERO; gcl.len()];
        for (c, &gc) in n_to_g.iter().enumerate() {
            omega_b[gc] += b.omega[c];
        }
        let mut bad = Vec::new();
        for &bi in wr {
            let bd = &gb.blocks[bi];
            for c in (0..gcl.len()).filter(|&c| in_n[c].is_some()) {
                let lhs = gf.mul(bd.idempotent[c], bd.omega[c]);
                let rhs = gf.mul(cov.egb[i][c], omega_b[c]);
                if lhs != rhs {
                    bad.push(format!("{}@{}", bd.label, perm::to_cycles(g.elt(gcl.list[c].rep))));
                }
            }
        }
        let nclasses = in_n.iter().filter(|c| c.is_some()).count();
        r.push(
            format!("{subject} beta-omega"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("holds on {nclasses} classes for each weakly regular coverer")
            } else {
                format!("fails at {}", bad.join(", "))
            },
        );
    }
    Ok(r)
}

/// Blocks, Brauer table and PIM degrees of one group.
#[derive(Clone, Debug)]
pub struct BlockContext {
    pub irr: IrrSet,
    pub blocks: Blocks,
    pub table: BrauerTable,
    pub phi: Vec<u64>,
}

impl BlockContext {
    pub fn new(irr: IrrSet) -> Result<Self> {
        let blocks = Blocks::compute(&irr)?;
        let table = brauer_table(&irr)?;
        let phi = pim_degrees(&table)?.phi;
        Ok(BlockContext {
            irr,
            blocks,
            table,
            phi,
        })
    }

    fn name(&self) -> &str {
        self.irr.group.name()
    }

    /// Whether simple `j` has height 0 in its block.
    pub fn is_height0(&self, j: usize) -> bool {
        let order = self.irr.group.order() as u64;
        let d = self.blocks.blocks[self.blocks.block_of[j]].defect;
        v2(self.table.degrees[j] as u64) == v2(order) - d
    }
}

fn rational(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Per block: an odd number of height-0 simples with `Φ_θ(1)_2 = |G|_2`,
/// the residue identity `Σ (Φ_θ(1)/|G|)* (θ(1)/|G:D|)* = 1`, and Brauer's
/// unit statement for `dim(B) = Σ Φ_θ(1) θ(1)`.
pub fn verify_odd_height0(bc: &BlockContext) -> Result<Report> {
    let mut r = Report::new("height0", bc.name(), "");
    let field = &bc.irr.field;
    let cyc = field.cyclotomic();
    let gf = field.gf();
    let order = bc.irr.group.order() as u64;
    let g2 = v2(order);
    let mut below = 0;
    for (bi, b) in bc.blocks.blocks.iter().enumerate() {
        let index = order >> b.defect;
        let mut count = Vec::new();
        let mut residue = Elt::ZERO;
        let mut dim_b = 0u64;
        let mut low_height = Vec::new();
        for &j in &b.members {
            let theta = bc.table.degrees[j] as u64;
            let phi = bc.phi[j];
            dim_b += phi * theta;
            if v2(theta) < g2 - b.defect {
                low_height.push(bc.irr.simples[j].label.clone());
            }
            if v2(phi) < g2 {
                below += 1;
            }
            if bc.is_height0(j) && v2(phi) == g2 {
                count.push(bc.irr.simples[j].label.clone());
            }
            let a = field.reduce_mod2(&Cyclotomic::from_rational(cyc, rational(phi, order)))?;
            let t = field.reduce_mod2(&Cyclotomic::from_rational(cyc, rational(theta, index)))?;
            residue += gf.mul(a, t);
        }
        let unit = Cyclotomic::from_rational(cyc, rational(dim_b, order * index));
        let unit_ok = field.valuation(&unit) == Some(0);
        let rank = (bc.irr.group.order() <= IDEMPOTENT_RANK_LIMIT)
            .then(|| bc.blocks.idempotent_rank(bi));
        let rank_ok = rank.is_none_or(|x| x as u64 == dim_b);
        r.push(
            b.label.clone(),
            count.len() % 2 == 1 && residue == Elt::ONE && unit_ok && rank_ok && low_height.is_empty(),
            format!(
                "defect {}, height-0 with full PIM 2-part: [{}] ({}); residue sum {}; dim(B) = {}{}{}",
                b.defect,
                count.join(", "),
                count.len(),
                residue,
                dim_b,
                match rank {
                    Some(x) => format!(", idempotent rank {x}"),
                    None => String::new(),
                },
                if low_height.is_empty() {
                    String::new()
                } else {
                    format!("; degrees below |G:D|_2: [{}]", low_height.join(", "))
                }
            ),
        );
    }
    r.note(format!("{below} simple(s) with Φ(1)_2 < |G|_2"));
    Ok(r)
}

/// For height-0 `θ` and 2-regular `C`: `|C| θ(g_C) / θ(1)` is 2-integral
/// and reduces to `ω_B(C^+)`.
pub fn verify_central_theta(bc: &BlockContext) -> Result<Report> {
    let mut r = Report::new("central-theta", bc.name(), "");
    let field = &bc.irr.field;
    let cl = bc.irr.group.classes();
    let names = bc.table.class_names();
    for j in 0..bc.irr.len() {
        if !bc.is_height0(j) {
            continue;
        }
        let b = &bc.blocks.blocks[bc.blocks.block_of[j]];
        let theta = bc.table.degrees[j] as u64;
        let mut bad = Vec::new();
        for (pos, &c) in bc.table.classes.iter().enumerate() {
            let v = bc.table.rows[j].values[pos].scale(&rational(cl.list[c].size() as u64, theta));
            match field.valuation(&v) {
                Some(x) if x < 0 => bad.push(format!("{} not 2-integral", names[pos])),
                _ => {
                    let red = field.reduce_mod2(&v)?;
                    if red != b.omega[c] {
                        bad.push(format!("{} reduces to {} not {}", names[pos], red, b.omega[c]));
                    }
                }
            }
        }
        r.push(
            bc.irr.simples[j].label.clone(),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} 2-regular classes agree with ω of {}", bc.table.classes.len(), b.label)
            } else {
                bad.join("; ")
            },
        );
    }
    Ok(r)
}

/// Every self-dual simple without an invariant quadratic form lies in the
/// principal block.
pub fn verify_principal_block_lemma(bc: &BlockContext) -> Result<Report> {
    let mut r = Report::new("principal-block", bc.name(), "");
    let dual = bc.irr.dual_map();
    for (j, s) in bc.irr.iter().enumerate() {
        if dual[j] != j || s.is_trivial() {
            continue;
        }
        let quadratic = quadratic_type(&s.module)?.witness.is_some();
        let b = &bc.blocks.blocks[bc.blocks.block_of[j]];
        r.push(
            s.label.clone(),
            quadratic || b.is_principal,
            format!(
                "{} in {}",
                if quadratic { "quadratic" } else { "non-quadratic" },
                b.label
            ),
        );
    }
    if r.items.is_empty() {
        r.note("no non-trivial self-dual simples");
    }
    Ok(r)
}

/// All defects, for summaries.
pub fn defects(blocks: &Blocks) -> Vec<u32> {
    blocks.blocks.iter().map(|b| b.defect).collect()
}

/// Distinct `G`-orbits of blocks of `N`.
pub fn orbit_count(cov: &Covering) -> usize {
    cov.n_orbit.iter().collect::<BTreeSet<_>>().len()
}

#[cfg(test)]
mod tests;
