//! Exhaustive checks of the structural lemmas on small cases.

use chevalley::bounds::Status;
use chevalley::error::Result;
use chevalley::gf::Field;
use chevalley::poly::PolySystem;
use chevalley::verify::{
    verify_dense_affine_dims, verify_lemma23, verify_min_extension, verify_thm21, LemmaPart,
};
use chevalley::zeroset::Budget;

fn main() -> Result<()> {
    let budget = Budget::DEFAULT;
    for (q, t, part) in [(2, 3, 1), (3, 2, 2), (4, 2, 3), (3, 2, 4)] {
        let v = verify_lemma23(q, t, LemmaPart::from_number(part, q, None)?, budget)?;
        println!(
            "line structure q={q} t={t} part {part}: {:?} over {} subsets ({} qualifying)",
            v.status, v.subsets_checked, v.qualifying
        );
    }

    let f = Field::from_literal("GF(3)")?;
    let h = PolySystem::parse(&f, 3, &["x1*x2 - x3^2"])?;
    for m in 2..=3 {
        let v = verify_thm21(&h, m, budget, 64, 0)?;
        println!(
            "coset counts mod q, m = {m}: {:?} ({} directions)",
            v.status, v.directions_checked
        );
    }

    let ext = verify_min_extension(&h, budget)?;
    println!(
        "minimal extensions: {:?} over {} configurations",
        ext.status, ext.configurations
    );

    let dims = verify_dense_affine_dims(&h, budget)?;
    println!("sparse affine spaces: {:?}", dims.status);
    if let Some(plane) = &dims.off_origin_at_d {
        println!("  off the origin: {plane}");
    }
    assert_ne!(dims.status, Status::Fail);
    Ok(())
}
