//! Permutation groups from generators or text, their classes and normal
//! subgroups.

use char2::grp::{named, perm, PermGroup};

fn main() -> char2::error::Result<()> {
    let text = "degree 6\n(1,2,3,4,5,6)\n(1,2)\n";
    let g = PermGroup::from_text(text, 10_000)?.named("S6");
    println!("{}: order {}, exponent {}", g.name(), g.order(), g.exponent());
    for c in &g.classes().list {
        println!(
            "  order {:>2}  size {:>3}  |C_G(x)|_2 = 2^{}{}",
            c.elt_order,
            c.size(),
            c.defect,
            if c.is_2regular { "  (2-regular)" } else { "" }
        );
    }

    let s4 = named::symmetric(4).named("S4");
    for n in s4.proper_normal_subgroups() {
        println!("S4 has a normal subgroup of order {}", n.order());
    }
    print!("{}", perm::format_group_text(s4.degree(), s4.gens()));
    Ok(())
}
