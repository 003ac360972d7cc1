//! Affine point counts of x^(m-r-2) y^2 = x^m + a x^2 + a x + b over all
//! a != b, next to the published rows.
//!
//! cargo run --release --example point_count_tables -- 13 17

use marcs::tables::{format_set, sweep};
use marcs::Field;

fn main() -> marcs::Result<()> {
    let orders: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let orders = if orders.is_empty() { vec![11, 13] } else { orders };
    for (m, r) in [(8, 5), (11, 7)] {
        println!("m = {m}, r = {r}");
        for &q in &orders {
            let row = sweep(&Field::of_order(q)?, m, r)?;
            println!("  q={q:<3} {}", format_set(&row.counts));
            if let Some(fix) = &row.fixture {
                println!("        published {}", format_set(fix));
                if !row.matches() {
                    println!("        only in sweep: {}", format_set(&row.extra));
                }
            }
            println!("        {} pairs skipped (g not squarefree)", row.skipped.len());
        }
    }
    Ok(())
}
