//! The nonsquare twist x^2 y^2 = xi (x^9 + 1) over F_289 and a complete
//! 9-arc in PG(2,289) built from it.
//!
//! cargo run --release --example twist_arc

use marcs::curve::{make_twist, TwistKind};
use marcs::{build_complete_arc, Field};

fn main() -> marcs::Result<()> {
    let big = Field::new(17, 2)?;
    let tw = make_twist(TwistKind::Odd, 9, &big)?;
    let points = tw.curve.rational_points().len();
    println!("{}", tw.curve.describe());
    println!("xi = {}", big.format_elem(tw.xi));
    println!(
        "{points} points in PG(2,289); certified bound {}, (m+1) form {}",
        tw.certified_bound, tw.stated_bound
    );

    let (arc, report) = build_complete_arc(&tw.curve)?;
    println!(
        "complete arc of size {} ({} exceptional lines, +{} along them, +{} final)",
        arc.len(),
        report.completion_lines,
        report.additions.lambda,
        report.additions.safety
    );
    println!("size bound for large q: {}", tw.arc_bound);
    println!("complete {}", report.complete);
    Ok(())
}
