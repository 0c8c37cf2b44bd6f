//! A seeded randomised campaign cross-checking oracle, condition and constructions.
//!
//! cargo run --release --example campaign -- 7 1000

use prettyclean::campaign::{run_campaign, CampaignConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let report = run_campaign(&CampaignConfig { seed, count, ..CampaignConfig::default() });
    println!("seed {seed}: {} samples, {} height-2 unmixed", report.samples, report.height_two_pure);
    for t in report.kinds.iter().filter(|t| t.samples > 0) {
        let name = t.kind.map_or("?", |k| k.name());
        println!(
            "  {name:<12} {:>4} samples, cm {:>4}, condition {:>4}, mismatches {}",
            t.samples, t.cm_true, t.condition_true, t.mismatches
        );
    }
    println!(
        "scm {}/{}, pretty clean {}, stanley ok {}, all kinds seen {}",
        report.scm.scm_true, report.scm.samples, report.scm.pretty_clean_ok, report.scm.stanley_ok, report.coverage.all_kinds_covered
    );
    for c in report.counterexamples.iter().take(5) {
        println!("  sample {}: {} [{}] {}", c.index, c.ideal, c.check, c.detail);
    }
}
