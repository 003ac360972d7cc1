//! PG(2,7): canonical points and lines, joins, meets and pencils.

use marcs::{Field, Plane};

fn main() -> marcs::Result<()> {
    let f = Field::new(7, 1)?;
    let pl = Plane::new(&f);
    println!(
        "PG(2,{}) has {} points and {} lines",
        pl.q(),
        pl.size(),
        pl.all_lines().count()
    );

    let p = pl.affine_point(f.from_int(1), f.from_int(2));
    let q = pl.point(f.from_int(3), f.from_int(6), f.from_int(3))?;
    println!("{} and {} (scaled from 3:6:3)", pl.format_point(p), pl.format_point(q));

    let l = pl.line_through(p, pl.vertical_infinite_point())?;
    println!("vertical through {}: {}", pl.format_point(p), pl.format_line(l));
    let m = pl.line_at_infinity();
    println!("it meets the line at infinity in {}", pl.format_point(pl.meet(l, m)?));

    let points: Vec<String> = pl.line_points(l).into_iter().map(|x| pl.format_point(x)).collect();
    println!("points on it: {}", points.join(" "));
    let pencil: Vec<String> = pl.lines_through(p).into_iter().map(|x| pl.format_line(x)).collect();
    println!("pencil of {}: {}", pl.format_point(p), pencil.join(" "));
    Ok(())
}
