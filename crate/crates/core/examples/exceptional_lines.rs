//! The exceptional line set of x y^2 = x^8 + x^2 + x + 3 over F_13 and the
//! double-tangency witnesses.

use marcs::curve::{table_g, Locus};
use marcs::{Curve, Field};

fn main() -> marcs::Result<()> {
    let f = Field::new(13, 1)?;
    let c = Curve::hyperelliptic(&f, 8, 5, table_g(&f, 8, f.from_int(1), f.from_int(3)))?;
    let pl = c.plane();
    println!(
        "{}  genus {}  {} rational points",
        c.describe(),
        c.genus(),
        c.rational_points().len()
    );

    let lambda = c.compute_lambda();
    println!("{} lines (bound {}):", lambda.len(), c.lambda_bound());
    for l in lambda {
        let prof = c.line_intersection_profile(l)?;
        let rational: Vec<String> = prof
            .affine
            .iter()
            .filter_map(|e| match e.locus {
                Locus::Rational(p) => Some(format!("{}^{}", pl.format_point(p), e.multiplicity)),
                Locus::Conjugate { .. } => None,
            })
            .collect();
        println!(
            "  {:<10} pattern {:?}  distinct {}  rational {}",
            pl.format_line(l),
            prof.multiplicity_pattern(),
            prof.distinct_closure_points,
            rational.join(" ")
        );
    }

    let w = c.double_tangency_witnesses()?;
    println!(
        "{} double-tangency witnesses (bound {})",
        w.len(),
        c.witness_bound().unwrap_or(0)
    );
    Ok(())
}
