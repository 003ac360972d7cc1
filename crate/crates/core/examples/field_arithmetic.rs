//! Arithmetic in F_25 and F_27: the chosen modulus, inverses, square roots.

use marcs::{Elem, Field};

fn main() -> marcs::Result<()> {
    for text in ["5^2", "3^3", "1000003"] {
        let f = Field::parse(text)?;
        println!("F_{} = F_{f}, modulus {:?}", f.q(), f.modulus());
    }

    let f = Field::new(5, 2)?;
    let x = f.from_coeffs(&[2, 3])?;
    let y = f.from_coeffs(&[1, 4])?;
    let show = |e: Elem| f.format_elem(e);
    println!("x = {}  y = {}", show(x), show(y));
    println!("x + y = {}  x * y = {}", show(f.add(x, y)), show(f.mul(x, y)));
    println!("1 / x = {}", show(f.inv(x)?));
    println!("x^24 = {}", show(f.pow(x, 24)));

    let squares = f
        .elements()
        .filter(|&e| !e.is_zero() && f.is_square(e).unwrap())
        .count();
    println!(
        "{squares} nonzero squares, first nonsquare {}",
        show(f.first_nonsquare()?)
    );
    let s = f.square(y);
    println!("sqrt({}) = {}", show(s), show(f.sqrt(s)?));
    Ok(())
}
