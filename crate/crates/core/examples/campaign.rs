//! A seeded random campaign over GF(4), then an exhaustive sweep of ternary cubic forms over GF(2).

use chevalley::error::Result;
use chevalley::verify::{run_campaign, CampaignConfig, CampaignMode};

fn main() -> Result<()> {
    let random = CampaignConfig {
        field: "GF(4)".into(),
        n_min: 3,
        n_max: 4,
        d_min: 2,
        d_max: 3,
        instances: 200,
        seed: 7,
        ..CampaignConfig::default()
    };
    let report = run_campaign(&random)?;
    println!(
        "{} instances, {} failures",
        report.instances_run,
        report.total_failures()
    );
    for (id, t) in &report.tallies {
        println!(
            "  {id:<26} pass {:>4}  fail {}  n/a {:>4}",
            t.pass, t.fail, t.not_applicable
        );
    }

    let forms = CampaignConfig {
        field: "GF(2)".into(),
        mode: CampaignMode::ExhaustiveForms,
        n_min: 3,
        n_max: 3,
        d_min: 3,
        d_max: 3,
        ..CampaignConfig::default()
    };
    let report = run_campaign(&forms)?;
    println!(
        "all {} ternary cubic forms: {} failures",
        report.instances_run,
        report.total_failures()
    );
    println!("zero-count histogram: {:?}", report.counts);
    Ok(())
}
