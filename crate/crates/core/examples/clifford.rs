//! Self-dual simples of a normal subgroup and their canonical self-dual
//! extensions, with the T1 to T3 verifiers on S6 over A6.

use std::sync::Arc;

use char2::clf::{canonical_module, default_field, verify_t1, verify_t2, verify_t3, PairContext};
use char2::grp::named;
use char2::rep::IrrSet;

fn main() -> char2::error::Result<()> {
    let g = named::symmetric(6).named("S6").into_group();
    let n = Arc::new(g.subgroup(named::alternating(6).gens().to_vec())?.named("A6"));
    let field = default_field(&g)?;
    let ctx = PairContext::from_sets(IrrSet::compute(&g, &field)?, IrrSet::compute(&n, &field)?)?;
    for i in (0..ctx.irr_n.len()).filter(|&i| ctx.self_dual_n(i)) {
        let w = &ctx.irr_n.simples[i];
        let cm = canonical_module(&w.module, &g)?;
        println!(
            "{} of A6: stabilizer order {}, canonical module of dimension {}",
            w.label,
            cm.stabilizer.t.order(),
            cm.module.dim()
        );
    }
    for r in [verify_t1(&ctx)?, verify_t2(&ctx)?, verify_t3(&ctx)?] {
        print!("{}", r.to_text());
    }
    Ok(())
}
