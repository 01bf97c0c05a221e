//! Arithmetic in GF(8) and the norm map down to GF(2).

use chevalley::error::Result;
use chevalley::gf::{Field, NormMap};

fn main() -> Result<()> {
    let f8 = Field::from_literal("GF(2^3)")?;
    println!("{} with modulus {:?}", f8.literal(), f8.modulus());

    let t = f8.generator();
    for e in 0..8 {
        let x = f8.pow(t, e);
        println!("t^{e} = {:>8}  coords {:?}", f8.format(x), f8.coords(x));
    }

    let a = f8.add(t, f8.from_int(1));
    let inv = f8.inv(a)?;
    println!("({})^-1 = {}", f8.format(a), f8.format(inv));
    assert_eq!(f8.mul(a, inv), f8.from_int(1));

    let f2 = Field::prime(2)?;
    let norm = NormMap::new(&f8, &f2)?;
    let ones = f8
        .elements()
        .filter(|&x| norm.apply(x) == f2.from_int(1))
        .count();
    println!("elements of norm 1: {ones}");
    Ok(())
}
