//! Norm forms and the low-count families, each checked by enumeration.

use chevalley::constructions::{
    norm_certificate, prop41_certificate, prop42_certificate, sharp_catalog,
};
use chevalley::error::Result;
use chevalley::zeroset::Budget;

fn main() -> Result<()> {
    let budget = Budget::DEFAULT;
    let mut certs = vec![
        norm_certificate(3, 2, budget)?,
        norm_certificate(2, 4, budget)?,
    ];
    for d in 2..=5 {
        certs.push(prop41_certificate(d, budget)?);
        certs.push(prop42_certificate(d, budget)?);
    }
    certs.extend(sharp_catalog(3, budget)?);

    for c in &certs {
        let bound = match (&c.matched_bound, &c.bound_value) {
            (Some(b), Some(v)) => format!("{b} = {v}"),
            _ => "-".into(),
        };
        println!(
            "{:<12} {:<6} n={} d={}  N={:<3} {:<14} verified={}",
            c.name, c.field, c.n, c.d, c.measured_count, bound, c.verified
        );
    }
    println!("{}", certs[2].polynomials[0]);
    Ok(())
}
