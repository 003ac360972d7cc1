//! Writes an arc file, reads it back, verifies it, then deletes a point.

use marcs::io::{read_arc, write_arc};
use marcs::{build_complete_arc, Curve, Field};

fn main() -> marcs::Result<()> {
    let f = Field::new(5, 2)?;
    let c = Curve::monomial(&f, 3)?;
    let (arc, _) = build_complete_arc(&c)?;
    let text = write_arc(&arc);
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("... {} points", arc.len());

    let mut back = read_arc(&text)?.into_arc();
    println!("read back: complete {}", back.is_complete());
    let gone = back.points()[0];
    back.remove(gone);
    let open = back.uncovered_points();
    println!(
        "without {}: complete {}, {} uncovered",
        back.plane().format_point(gone),
        back.is_complete(),
        open.len()
    );
    Ok(())
}
