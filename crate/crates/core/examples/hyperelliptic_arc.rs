//! Complete 8-arcs in PG(2,41) from x y^2 = x^8 + a x^2 + a x + b,
//! completed along the exceptional lines.

use marcs::curve::table_g;
use marcs::{build_complete_arc, Curve, Field};

fn main() -> marcs::Result<()> {
    let f = Field::new(41, 1)?;
    for (a, b) in [(1, 2), (3, 7), (5, 11)] {
        let g = table_g(&f, 8, f.from_int(a), f.from_int(b));
        let c = match Curve::hyperelliptic(&f, 8, 5, g) {
            Ok(c) => c,
            Err(e) => {
                println!("a={a} b={b}: {e}");
                continue;
            }
        };
        let (arc, report) = build_complete_arc(&c)?;
        println!(
            "a={a} b={b}: {} curve points, {} lines, +{} along them, +{} final, size {}, complete {}",
            report.curve_points,
            report.completion_lines,
            report.additions.lambda,
            report.additions.safety,
            arc.len(),
            report.complete
        );
        for chk in &report.bound_checks {
            println!("    {}: {} <= {} {}", chk.name, chk.value, chk.bound, chk.holds);
        }
    }
    Ok(())
}
