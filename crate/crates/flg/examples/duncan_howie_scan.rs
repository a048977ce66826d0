//! Scanning powers z^n of derived-subgroup words against the law n < 2g,
//! where g is the genus of z^n.
//!
//! Run with: cargo run --release --example duncan_howie_scan

use flg::genus::duncan_howie_scan;
use flg::word::GroupContext;

fn main() {
    let ctx = GroupContext::new(2).unwrap();
    let report = duncan_howie_scan(&ctx, 6, 3, 2, 4).unwrap();

    println!(
        "scanned {} (z, n) instances over representatives of length <= {}",
        report.checked, report.l_max
    );
    for inst in &report.instances {
        let upper = match inst.genus_upper {
            Some(u) => u.to_string(),
            None => "?".to_string(),
        };
        let note = match &inst.skipped {
            Some(reason) => format!("  [unchecked: {reason}]"),
            None => String::new(),
        };
        println!(
            "  z={} n={}: genus in [{}, {upper}]{note}",
            inst.z, inst.n, inst.genus_lower
        );
    }
    println!("violations of n < 2g: {}", report.violations.len());
}
