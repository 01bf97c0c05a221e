//! Exact lower bounds, the (3) vs (4) comparison, and the auxiliary inequality.

use chevalley::bounds::{bound_values, compare_bounds_3_4, lemma31_evaluate};
use chevalley::error::Result;

fn main() -> Result<()> {
    let report = bound_values(5, 4, 2, true)?;
    for b in &report.bounds {
        let state = if b.applicable { "" } else { "  (n/a)" };
        println!(
            "{:<10} {:>8}  min N = {}{state}",
            b.id.to_string(),
            b.value.to_string(),
            b.min_count
        );
    }

    for q in [3, 5, 7, 9, 11, 13] {
        let c = compare_bounds_3_4(q, 5, 2)?;
        println!(
            "q = {q:>2}: (3) = {:>10}  (4) = {:>6}  {}",
            c.bound3.to_string(),
            c.bound4.to_string(),
            c.verdict
        );
    }

    for (q, v) in [(5, 2), (7, 2), (8, 2), (7, 3), (9, 3)] {
        let l = lemma31_evaluate(q, v)?;
        println!("q = {q}, v = {v}: {} vs {} -> {}", l.lhs, l.rhs, l.holds);
    }
    Ok(())
}
