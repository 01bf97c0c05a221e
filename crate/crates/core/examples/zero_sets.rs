//! Zero sets: counting, affineness witnesses, general position, coset counts.

use chevalley::error::Result;
use chevalley::gf::Field;
use chevalley::poly::PolySystem;
use chevalley::zeroset::{
    enumerate_zeros, is_affine_space, max_general_position, parallel_coset_counts, AffineSpace,
    Budget,
};

fn main() -> Result<()> {
    let f = Field::from_literal("GF(3)")?;
    let n = 3;
    let budget = Budget::DEFAULT;

    for texts in [&["x1*x2 - x3^2"][..], &["x1 + x2", "x3 - 1"][..]] {
        let system = PolySystem::parse(&f, n, texts)?;
        let zeros = enumerate_zeros(&system, &AffineSpace::full(&f, n), budget)?;
        let verdict = is_affine_space(&f, zeros.points())?;
        println!("{:?}: N = {}", system.texts(), zeros.count());
        println!(
            "  affine: {} (hull rank {})",
            verdict.is_affine, verdict.rank
        );
        if let Some(w) = &verdict.witness {
            println!("  witness: {w:?}");
        }
        let gp = max_general_position(&f, zeros.points(), n);
        println!("  points in general position: {}", gp.len());
    }

    let h = PolySystem::parse(&f, n, &["x1*x2 - x3^2"])?;
    let x3 = vec![f.from_int(0), f.from_int(0), f.from_int(1)];
    let cc = parallel_coset_counts(&h, &[x3], budget)?;
    println!(
        "zeros on the 9 lines parallel to the x3 axis: {:?}",
        cc.counts
    );
    Ok(())
}
