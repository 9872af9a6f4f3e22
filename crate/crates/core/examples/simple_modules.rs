//! The simple modules of a group in characteristic 2, their duals, and the
//! composition factors of a tensor product.

use char2::clf::default_field;
use char2::grp::named;
use char2::rep::IrrSet;

fn main() -> char2::error::Result<()> {
    let g = named::alternating(6).named("A6").into_group();
    let field = default_field(&g)?;
    let irr = IrrSet::compute(&g, &field)?;
    let dual = irr.dual_map();
    for (j, s) in irr.iter().enumerate() {
        println!("{:>4}  dim {:>2}  dual {}", s.label, s.dim(), irr.simples[dual[j]].label);
    }
    let four = irr.iter().find(|s| s.dim() == 4).expect("A6 has a 4-dimensional simple");
    let square = four.module.tensor(&four.module)?;
    let mult = irr.composition_multiplicities(&square, 1)?;
    let parts: Vec<String> = irr
        .iter()
        .zip(&mult)
        .filter(|(_, &k)| k > 0)
        .map(|(s, k)| format!("{k}×{}", s.label))
        .collect();
    println!("{0} ⊗ {0} = {1}", four.label, parts.join(" + "));
    Ok(())
}
