//! Brauer characters, the Brauer character table and principal
//! indecomposable degrees.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fld::{odd_part, v2, Cyclotomic, CyclotomicField, SplittingField};
use crate::grp::{perm, Group};
use crate::mat::Mat;
use crate::report::Report;
use crate::rep::{IrrSet, Representation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerCharacter {
    pub module_label: String,
    /// Values on the 2-regular classes, in the order of
    /// `Classes::regular()`.
    pub values: Vec<Cyclotomic>,
    pub degree: usize,
}

/// Eigenvalue multiplicities of `ρ(g)` for an element of odd order `o`
/// dividing `m`: entry `j` is `dim ker(ρ(g) - v^j)` with `v = u^(m/o)`.
pub fn eigen_multiplicities(a: &Mat, o: u64, field: &SplittingField) -> Result<Vec<usize>> {
    if o.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("element of even order {o}")));
    }
    if !field.m().is_multiple_of(o) {
        return Err(Error::InvalidInput(format!(
            "element order {o} does not divide the field modulus {}",
            field.m()
        )));
    }
    let f = field.gf();
    let d = a.rows();
    let v = f.pow(field.u(), field.m() / o);
    let mut out = vec![0; o as usize];
    let mut total = 0;
    let mut x = crate::fld::Elt::ONE;
    for slot in out.iter_mut() {
        if total == d {
            break;
        }
        let k = a.add(&Mat::scalar(f, d, x)).nullity();
        *slot = k;
        total += k;
        x = f.mul(x, v);
    }
    if total != d {
        return Err(Error::Finding(format!(
            "eigenvalue multiplicities sum to {total}, not {d}"
        )));
    }
    Ok(out)
}

/// The Brauer character value of `m` at an element of odd order.
pub fn brauer_value(m: &Representation, elt: usize) -> Result<Cyclotomic> {
    let g = m.group();
    let o = g.elt_order(elt);
    let sf = m.field();
    let mults = eigen_multiplicities(&m.matrix_of(elt), o, sf)?;
    let cyc = sf.cyclotomic();
    let step = (sf.m() / o) as i64;
    let mut acc = Cyclotomic::zero(cyc);
    for (j, &k) in mults.iter().enumerate() {
        if k > 0 {
            let z = Cyclotomic::zeta_pow(cyc, step * j as i64);
            acc = acc.add(&z.scale(&BigRational::from_integer(BigInt::from(k))));
        }
    }
    Ok(acc)
}

pub fn brauer_character(m: &Representation) -> Result<BrauerCharacter> {
    let g = m.group();
    let cl = g.classes();
    let values = cl
        .regular()
        .iter()
        .map(|&c| brauer_value(m, cl.list[c].rep))
        .collect::<Result<Vec<_>>>()?;
    Ok(BrauerCharacter {
        module_label: m.label().to_string(),
        values,
        degree: m.dim(),
    })
}

/// Square matrix over Q(ζ_m).
pub type CycMatrix = Vec<Vec<Cyclotomic>>;

/// Inverse and determinant by Gauss-Jordan elimination; `None` when
/// singular.
pub fn invert(a: &CycMatrix, cyc: &Arc<CyclotomicField>) -> Option<(CycMatrix, Cyclotomic)> {
    let n = a.len();
    let mut m: Vec<Vec<Cyclotomic>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Cyclotomic::from_int(cyc, (i == j) as i64)));
            r
        })
        .collect();
    let mut det = Cyclotomic::one(cyc);
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        if p != c {
            m.swap(p, c);
            det = det.neg();
        }
        let piv = m[c][c].clone();
        det = det.mul(&piv);
        let inv = piv.inv()?;
        for x in m[c].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let t = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&t.mul(y));
                }
            }
        }
    }
    let inv = m.into_iter().map(|r| r[n..].to_vec()).collect();
    Some((inv, det))
}

pub fn mat_mul(a: &CycMatrix, b: &CycMatrix, cyc: &Arc<CyclotomicField>) -> CycMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..k).fold(Cyclotomic::zero(cyc), |acc, t| acc.add(&a[i][t].mul(&b[t][j])))
                })
                .collect()
        })
        .collect()
}

fn is_identity(a: &CycMatrix) -> bool {
    a.iter().enumerate().all(|(i, r)| {
        r.iter().enumerate().all(|(j, x)| {
            if i == j {
                x.as_rational().is_some_and(|q| q.is_one())
            } else {
                x.is_zero()
            }
        })
    })
}

/// Rows are the simples of an [`IrrSet`], columns the 2-regular classes.
#[derive(Clone, Debug)]
pub struct BrauerTable {
    pub group: Group,
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
    /// Class indices of the 2-regular classes.
    pub classes: Vec<usize>,
    pub rows: Vec<BrauerCharacter>,
    /// `inverse[i][u] = Φ_u(g_i^-1) / |C(g_i)|`.
    pub inverse: CycMatrix,
    pub det: Cyclotomic,
}

impl BrauerTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn matrix(&self) -> CycMatrix {
        self.rows.iter().map(|r| r.values.clone()).collect()
    }

    pub fn cyclotomic(&self) -> &Arc<CyclotomicField> {
        self.rows[0].values[0].field()
    }

    /// `Φ_u(g_i)` for every simple `u` and 2-regular class `i`.
    pub fn pim_values(&self) -> CycMatrix {
        let cl = self.group.classes();
        let pos = |c: usize| self.classes.iter().position(|&x| x == c).expect("regular class");
        (0..self.len())
            .map(|u| {
                self.classes
                    .iter()
                    .map(|&c| {
                        let ci = cl.class_inverse(c);
                        let q = BigRational::from_integer(BigInt::from(cl.list[ci].centralizer_order));
                        self.inverse[pos(ci)][u].scale(&q)
                    })
                    .collect()
            })
            .collect()
    }

    /// Class representatives in cycle notation.
    pub fn class_names(&self) -> Vec<String> {
        let cl = self.group.classes();
        self.classes
            .iter()
            .map(|&c| perm::to_cycles(self.group.elt(cl.list[c].rep)))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let names = self.class_names();
        let cells: Vec<Vec<String>> = std::iter::once(
            std::iter::once(String::new()).chain(names.iter().cloned()).collect(),
        )
        .chain(self.rows.iter().zip(&self.labels).map(|(r, l)| {
            std::iter::once(l.clone())
                .chain(r.values.iter().map(|v| v.to_string()))
                .collect()
        }))
        .collect();
        let ncol = cells[0].len();
        let widths: Vec<usize> = (0..ncol)
            .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut s = format!("Brauer table of {} (ζ = ζ_{})\n", self.group.name(), self.cyclotomic().m());
        for r in &cells {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            s.push_str(line.join("  ").trim_end());
            s.push('\n');
        }
        s
    }

    pub fn export(&self) -> TableExport {
        let cl = self.group.classes();
        TableExport {
            group: self.group.name().to_string(),
            zeta_order: self.cyclotomic().m(),
            classes: self
                .classes
                .iter()
                .zip(self.class_names())
                .map(|(&c, rep)| ClassExport {
                    rep,
                    size: cl.list[c].size(),
                    order: cl.list[c].elt_order,
                    centralizer: cl.list[c].centralizer_order,
                })
                .collect(),
            rows: self
                .rows
                .iter()
                .zip(&self.labels)
                .map(|(r, l)| RowExport {
                    label: l.clone(),
                    degree: r.degree,
                    values: r.values.iter().map(coeff_strings).collect(),
                })
                .collect(),
        }
    }
}

fn coeff_strings(c: &Cyclotomic) -> Vec<String> {
    c.coeffs().iter().map(|q| q.to_string()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassExport {
    pub rep: String,
    pub size: usize,
    pub order: u64,
    pub centralizer: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowExport {
    pub label: String,
    pub degree: usize,
    /// Coefficients in the power basis `1, ζ, ζ^2, ...`.
    pub values: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableExport {
    pub group: String,
    pub zeta_order: u64,
    pub classes: Vec<ClassExport>,
    pub rows: Vec<RowExport>,
}

pub fn brauer_table(irr: &IrrSet) -> Result<BrauerTable> {
    let g = irr.group.clone();
    let cyc = irr.field.cyclotomic().clone();
    let rows = irr
        .iter()
        .map(|s| brauer_character(&s.module))
        .collect::<Result<Vec<_>>>()?;
    let classes = g.classes().regular();
    if rows.len() != classes.len() {
        return Err(Error::Finding(format!(
            "{} simples but {} 2-regular classes",
            rows.len(),
            classes.len()
        )));
    }
    let m: CycMatrix = rows.iter().map(|r| r.values.clone()).collect();
    let (inverse, det) =
        invert(&m, &cyc).ok_or_else(|| Error::Finding("Brauer table is singular".into()))?;
    if !is_identity(&mat_mul(&m, &inverse, &cyc)) || !is_identity(&mat_mul(&inverse, &m, &cyc)) {
        return Err(Error::Finding("table inverse fails the orthogonality check".into()));
    }
    Ok(BrauerTable {
        group: g,
        labels: irr.labels().iter().map(|s| s.to_string()).collect(),
        degrees: irr.dims(),
        classes,
        rows,
        inverse,
        det,
    })
}

fn rational_to_u64(q: &BigRational) -> Option<u64> {
    q.is_integer().then(|| q.to_integer().to_u64()).flatten()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PimDegrees {
    pub phi: Vec<u64>,
}

/// `Φ_u(1) = |G|` times the identity-class row of the inverse table.
pub fn pim_degrees(t: &BrauerTable) -> Result<PimDegrees> {
    let order = t.group.order() as u64;
    let id_row = t
        .classes
        .iter()
        .position(|&c| t.group.classes().list[c].elt_order == 1)
        .expect("identity class is 2-regular");
    let big = BigRational::from_integer(BigInt::from(order));
    let mut phi = Vec::with_capacity(t.len());
    for u in 0..t.len() {
        let v = t.inverse[id_row][u].scale(&big);
        let q = v
            .as_rational()
            .and_then(|q| rational_to_u64(&q))
            .filter(|&x| x > 0)
            .ok_or_else(|| Error::Finding(format!("Φ({}) = {} is not a positive integer", t.labels[u], v)))?;
        phi.push(q);
    }
    let two = 1u64 << v2(order);
    if let Some(u) = (0..phi.len()).find(|&u| phi[u] % two != 0) {
        return Err(Error::Finding(format!(
            "Φ({}) = {} is not divisible by |G|_2 = {two}",
            t.labels[u], phi[u]
        )));
    }
    let total: u64 = phi.iter().zip(&t.degrees).map(|(&p, &d)| p * d as u64).sum();
    if total != order {
        return Err(Error::Finding(format!("Σ Φ(1) θ(1) = {total} ≠ |G| = {order}")));
    }
    Ok(PimDegrees { phi })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDualPartition {
    pub self_dual: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    /// Real 2-regular classes of the group.
    pub real_classes: usize,
}

impl SelfDualPartition {
    pub fn r(&self) -> usize {
        self.self_dual.len()
    }

    pub fn matches_classes(&self) -> bool {
        self.r() == self.real_classes
    }
}

pub fn self_dual_partition(irr: &IrrSet) -> SelfDualPartition {
    let dual = irr.dual_map();
    let mut self_dual = Vec::new();
    let mut pairs = Vec::new();
    for (i, &j) in dual.iter().enumerate() {
        if i == j {
            self_dual.push(i);
        } else if i < j {
            pairs.push((i, j));
        }
    }
    let cl = irr.group.classes();
    let real_classes = cl.regular().iter().filter(|&&c| cl.list[c].is_real()).count();
    SelfDualPartition {
        self_dual,
        pairs,
        real_classes,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DetCheck {
    pub det: String,
    pub det_squared: String,
    pub product: String,
    /// `+1` or `-1` when `det^2 = ±product`, else 0.
    pub sign: i8,
}

impl DetCheck {
    pub fn ok(&self) -> bool {
        self.sign != 0
    }
}

/// `det(table)^2` against `± Π |C(g_j)|_{2'}`.
pub fn det_squared_check(t: &BrauerTable) -> DetCheck {
    let cl = t.group.classes();
    let product = t
        .classes
        .iter()
        .fold(BigInt::one(), |acc, &c| acc * BigInt::from(odd_part(cl.list[c].centralizer_order)));
    let sq = t.det.mul(&t.det);
    let sign = match sq.as_rational() {
        Some(q) if q.is_integer() && q.to_integer().abs() == product => {
            if q.is_positive() {
                1
            } else {
                -1
            }
        }
        _ => 0,
    };
    DetCheck {
        det: t.det.to_string(),
        det_squared: sq.to_string(),
        product: product.to_string(),
        sign,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalCheck {
    pub codimension: usize,
    pub odd: bool,
    /// Rank of `FG → ⊕ End(S)`, computed for small groups.
    pub oracle: Option<usize>,
}

impl RadicalCheck {
    pub fn ok(&self) -> bool {
        self.odd && self.oracle.is_none_or(|o| o == self.codimension)
    }
}

pub const RADICAL_ORACLE_LIMIT: usize = 100;

/// `dim FG - dim rad FG = Σ θ(1)^2`.
pub fn radical_codimension(irr: &IrrSet) -> RadicalCheck {
    let codimension: usize = irr.dims().iter().map(|d| d * d).sum();
    let g = &irr.group;
    let oracle = (g.order() <= RADICAL_ORACLE_LIMIT).then(|| {
        let f = irr.field.gf();
        let width: usize = irr.dims().iter().map(|d| d * d).sum();
        let mats: Vec<&[Mat]> = irr.iter().map(|s| s.module.all_matrices()).collect();
        let big = Mat::from_fn(f, g.order(), width, |x, col| {
            let mut c = col;
            for (s, ms) in irr.iter().zip(&mats) {
                let dd = s.dim() * s.dim();
                if c < dd {
                    return ms[x].get(c / s.dim(), c % s.dim());
                }
                c -= dd;
            }
            unreachable!()
        });
        big.rank()
    });
    RadicalCheck {
        codimension,
        odd: codimension % 2 == 1,
        oracle,
    }
}

/// `Σ θ(1)^2` is odd, with the annihilator rank as a cross-check.
pub fn verify_radical(irr: &IrrSet) -> Report {
    let mut r = Report::new("radical", irr.group.name(), "");
    let c = radical_codimension(irr);
    r.push(
        "codimension",
        c.ok(),
        format!(
            "Σ θ(1)^2 = {} ({}){}",
            c.codimension,
            if c.odd { "odd" } else { "even" },
            c.oracle.map_or(String::new(), |o| format!(", annihilator rank {o}"))
        ),
    );
    r
}

/// Determinant, PIM degrees and the self-dual count of the Brauer table.
pub fn verify_table(irr: &IrrSet) -> Result<Report> {
    let mut r = Report::new("brauer-table", irr.group.name(), "");
    let t = brauer_table(irr)?;
    let d = det_squared_check(&t);
    r.push("determinant", d.ok(), format!("det^2 = {}, Π |C|_2' = {}", d.det_squared, d.product));
    match pim_degrees(&t) {
        Ok(p) => r.push(
            "PIM degrees",
            true,
            format!("{:?}", p.phi),
        ),
        Err(Error::Finding(msg)) => r.push("PIM degrees", false, msg),
        Err(e) => return Err(e),
    }
    let p = self_dual_partition(irr);
    r.push(
        "self-dual",
        p.matches_classes(),
        format!("{} self-dual simples, {} real 2-regular classes", p.r(), p.real_classes),
    );
    Ok(r)
}

/// Values of a character at the inverse classes.
pub fn dual_values(t: &BrauerTable, values: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let cl = t.group.classes();
    t.classes
        .iter()
        .map(|&c| {
            let ci = cl.class_inverse(c);
            let pos = t.classes.iter().position(|&x| x == ci).expect("regular class");
            values[pos].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests;
