//! Roots, squarefree decomposition and distinct-degree patterns.

use marcs::{Field, Poly};

fn main() -> marcs::Result<()> {
    let f = Field::new(11, 1)?;
    // x^6 - 1 = (x - 1)(x + 1)(x^2 + x + 1)(x^2 - x + 1)
    let p = Poly::parse(&f, "10,0,0,0,0,0,1")?;
    println!("f = {p:?}");
    println!(
        "roots {:?}",
        p.roots().iter().map(|&r| f.format_elem(r)).collect::<Vec<_>>()
    );
    println!("distinct-degree pattern {:?}", p.distinct_degree_pattern()?);

    let q = &(&p * &p) * &Poly::x(&f);
    println!("g = f^2 x, squarefree: {}", q.is_squarefree());
    for (factor, e) in q.squarefree_factorization()? {
        println!("  ({factor:?})^{e}");
    }

    // inseparable input in characteristic 5
    let f5 = Field::new(5, 1)?;
    let r = Poly::parse(&f5, "1,0,0,0,0,1")?;
    println!("x^5 + 1 over F_5: {:?}", r.squarefree_factorization()?);

    let irr = Poly::parse(&f, "1,1,0,1")?;
    println!("x^3 + x + 1 irreducible over F_11: {}", irr.is_irreducible());
    Ok(())
}
