//! A complete 5-arc in PG(2,31) grown from the points of y = x^5.

use marcs::{build_complete_arc, Curve, Field};

fn main() -> marcs::Result<()> {
    let f = Field::new(31, 1)?;
    let c = Curve::monomial(&f, 5)?;
    let (arc, report) = build_complete_arc(&c)?;
    println!("{}: {} curve points", report.curve, report.curve_points);
    for line in &report.per_line {
        println!("  along {} added {}", line.line, line.added.len());
    }
    println!("  final pass added {}", report.safety_points.len());
    println!(
        "size {}  arc {}  complete {}",
        arc.len(),
        report.arc_ok,
        report.complete
    );
    println!("independent probe finds {} open points", arc.maximality_probe().len());
    for b in &report.bound_checks {
        println!(
            "{}: {} vs {}{}",
            b.name,
            b.value,
            b.bound,
            if b.advisory { " (advisory)" } else { "" }
        );
    }
    Ok(())
}
