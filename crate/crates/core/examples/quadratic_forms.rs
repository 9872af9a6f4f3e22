//! Invariant alternating forms on self-dual simples and the decision of
//! whether an invariant quadratic form exists.

use char2::clf::default_field;
use char2::frm::{fong_form, quadratic_type};
use char2::grp::named;
use char2::rep::IrrSet;

fn main() -> char2::error::Result<()> {
    for g in [named::symmetric(6).named("S6"), named::alternating(5).named("A5")] {
        let g = g.into_group();
        let irr = IrrSet::compute(&g, &default_field(&g)?)?;
        let dual = irr.dual_map();
        for (j, s) in irr.iter().enumerate() {
            if dual[j] != j || s.is_trivial() {
                continue;
            }
            let b = fong_form(&s.module)?;
            let q = quadratic_type(&s.module)?;
            println!(
                "{} {}: alternating {}, nondegenerate {}, quadratic {}",
                g.name(),
                s.label,
                b.is_alternating(),
                b.is_nondegenerate(),
                q.witness.is_some()
            );
        }
    }
    Ok(())
}
