//! Certified lower bounds for f(g, n): the largest genus of a word z whose
//! n-th power still has genus at most g. An empty domain is reported as such,
//! never as zero.
//!
//! Run with: cargo run --release --example f_table

use flg::genus::{f_lower_table, FLowerBound};
use flg::word::GroupContext;

fn main() {
    let ctx = GroupContext::new(2).unwrap();

    for (g, n) in [(1, 1), (1, 2), (2, 2)] {
        let entry = f_lower_table(&ctx, g, n, 6, 4).unwrap();
        match entry.result {
            FLowerBound::NoInstances => {
                println!("f({g}, {n}): no instance in the window (length <= {})", entry.l_max);
            }
            FLowerBound::Value { value, witness_z } => {
                println!("f({g}, {n}) >= {value}, witnessed by z = {witness_z}");
            }
        }
    }
}
