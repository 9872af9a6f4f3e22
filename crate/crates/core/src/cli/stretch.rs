//! The M22 items: its self-dual simples, the tensor identity for the
//! 10-dimensional pair, and the quadratic-type decisions.

use std::sync::mpsc;
use std::time::Duration;

use crate::error::Result;
use crate::fld::SplittingField;
use crate::frm::quadratic_type;
use crate::grp::named;
use crate::report::Report;
use crate::rep::simples::SimplesOptions;
use crate::rep::IrrSet;

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(3600);

/// Over GF(4), which splits M22 in characteristic 2. Brauer values at the
/// classes of order 5, 7 and 11 are out of reach over this field, so the
/// character identity φ₂φ₃ = 2φ₁ + φ₇ is checked on composition factors of
/// the tensor product.
pub fn verify_m22(seed: u64) -> Result<Report> {
    let g = named::m22().named("M22").into_group();
    let field = SplittingField::with_degree(2, 3);
    let irr = IrrSet::compute_with(
        &g,
        &field,
        &SimplesOptions {
            seed,
            ..SimplesOptions::default()
        },
    )?;
    let mut r = Report::new("m22", "M22", "");
    let dual = irr.dual_map();
    let self_dual: Vec<usize> = (0..irr.len())
        .filter(|&j| dual[j] == j && !irr.simples[j].is_trivial())
        .collect();
    let degrees: Vec<usize> = self_dual.iter().map(|&j| irr.simples[j].dim()).collect();
    r.push(
        "self-dual degrees",
        degrees == [34, 98],
        format!("non-trivial self-dual simples of degrees {degrees:?}; all degrees {:?}", irr.dims()),
    );
    let ten = irr.iter().position(|s| s.dim() == 10);
    if let Some(a) = ten {
        let m = &irr.simples[a].module;
        let product = m.tensor(&irr.simples[dual[a]].module)?;
        let mult = irr.composition_multiplicities(&product, seed)?;
        let shown: Vec<String> = irr
            .iter()
            .zip(&mult)
            .filter(|(_, &k)| k > 0)
            .map(|(s, k)| format!("{k}×{}", s.label))
            .collect();
        let ok = irr
            .iter()
            .zip(&mult)
            .all(|(s, &k)| k == if s.is_trivial() { 2 } else if s.dim() == 98 { 1 } else { 0 });
        r.push(
            "tensor identity",
            ok,
            format!("{} ⊗ {} = {}", irr.simples[a].label, irr.simples[dual[a]].label, shown.join(" + ")),
        );
    } else {
        r.push("tensor identity", false, "no 10-dimensional simple");
    }
    for &j in &self_dual {
        let s = &irr.simples[j];
        let q = quadratic_type(&s.module)?;
        r.push(
            s.label.clone(),
            q.witness.is_none(),
            format!(
                "{}, invariant-diagonal kernel dimension {}",
                if q.witness.is_none() { "no invariant quadratic form" } else { "quadratic type" },
                q.kernel_dim
            ),
        );
    }
    Ok(r)
}

/// Runs `f` on a worker thread and gives up after `budget`.
pub fn with_budget<T: Send + 'static>(budget: Duration, f: impl FnOnce() -> T + Send + 'static) -> Option<T> {
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(f());
    });
    rx.recv_timeout(budget).ok()
}
