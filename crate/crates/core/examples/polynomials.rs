//! Parsing, arithmetic, and linear changes of variables.

use chevalley::error::Result;
use chevalley::gf::Field;
use chevalley::poly::{parse_polynomial, PolySystem, Polynomial};
use chevalley::zeroset::{count_zeros, AffineSpace, Budget};

fn main() -> Result<()> {
    let f = Field::from_literal("GF(5)")?;
    let n = 3;
    let p = parse_polynomial("x1*x2 - x3^2 + 2", &f, n)?;
    let q = parse_polynomial("x1 + x3", &f, n)?;
    println!("p = {p}");
    println!("p * q = {}", p.mul(&q)?);
    println!(
        "p homogeneous: {}, degree {:?}",
        p.is_homogeneous(),
        p.degree()
    );

    let pt = [f.from_int(1), f.from_int(2), f.from_int(3)];
    println!("p(1, 2, 3) = {}", f.format(p.evaluate(&pt)?));

    // x3^5 agrees with x3 as a function on GF(5)
    let frob = Polynomial::var(&f, n, 2).pow(5);
    let c = frob.compile();
    for x in f.elements() {
        assert_eq!(c.eval(&[x, x, x]), x);
    }

    let v = [f.from_int(1), f.from_int(1), f.from_int(1)];
    let (a, moved) = p
        .sub(&Polynomial::constant(&f, n, f.from_int(3)))?
        .move_to_last_axis(&v)?;
    println!("after the change of basis {a:?}: {moved}");

    let full = AffineSpace::full(&f, n);
    let before = count_zeros(&PolySystem::single(p.clone()), &full, Budget::DEFAULT)?;
    let after = count_zeros(
        &PolySystem::single(p.substitute_linear(&a, &[f.from_int(0); 3])?),
        &full,
        Budget::DEFAULT,
    )?;
    println!("zeros before and after: {before} {after}");
    Ok(())
}
