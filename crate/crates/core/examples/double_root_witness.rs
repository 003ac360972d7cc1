//! A line x^m - t x + t a - b through (a, b) tangent to y = x^m, found over
//! the smallest extension that has one.

use marcs::curve::monomial_double_root_witness;
use marcs::Field;

fn main() -> marcs::Result<()> {
    for (p, m) in [(11, 5), (13, 7)] {
        let f = Field::new(p, 1)?;
        for (a, b) in [(0, 1), (6, 4), (2, 3)] {
            let (a, b) = (f.from_int(a), f.from_int(b));
            match monomial_double_root_witness(&f, m, a, b) {
                Ok(w) => println!(
                    "p={p} m={m} (a,b)=({},{}): F_{}^{}  t = {}  x = {}  pattern {:?}",
                    f.format_elem(a),
                    f.format_elem(b),
                    p,
                    w.degree,
                    w.extension.format_elem(w.t),
                    w.extension.format_elem(w.x),
                    w.pattern
                ),
                Err(e) => println!("p={p} m={m}: {e}"),
            }
        }
    }
    Ok(())
}
