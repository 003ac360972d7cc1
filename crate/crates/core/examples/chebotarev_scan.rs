//! Frobenius cycle types of the pencil x^5 - t x + t a - b over F_1009
//! against the cycle-type distribution of S_5.

use marcs::galois::{cycle_type_histogram, evidence_flags, sn_cycle_distribution, totally_split_search, tv_distance};
use marcs::{Curve, Elem, Field};

fn main() -> marcs::Result<()> {
    let f = Field::new(1009, 1)?;
    let c = Curve::monomial(&f, 5)?;
    let (a, b) = (Elem::ZERO, Elem::ONE);
    let hist = cycle_type_histogram(&c, a, b)?;
    let n = hist.unramified() as f64;
    println!("{:<12} {:>6} {:>9} {:>9}", "type", "count", "observed", "S_5");
    for (t, p) in sn_cycle_distribution(5) {
        let expected = *p.numer() as f64 / *p.denom() as f64;
        let count = hist.count(&t);
        println!(
            "{:<12} {count:>6} {:>9.4} {expected:>9.4}",
            t.to_string(),
            count as f64 / n
        );
    }
    println!("ramified {}", hist.ramified);
    println!("total variation {:.4}", tv_distance(&hist));
    println!("{:?}", evidence_flags(&hist, None));

    let t = totally_split_search(&c, a, b)?;
    println!("first totally split slope t = {}", f.format_elem(t));
    Ok(())
}
