//! Plain-text arc files.
//!
//! ```text
//! q=5^2 m=3
//! (0,0):(1,0):1
//! 1:0:0
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::arc::ArcSet;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::plane::{Plane, Point};

/// A parsed arc file: the plane, `m`, and the points in file order.
#[derive(Clone, Debug)]
pub struct ArcFile {
    pub plane: Plane,
    pub m: usize,
    pub points: Vec<Point>,
}

impl ArcFile {
    pub fn into_arc(self) -> ArcSet {
        ArcSet::from_points(&self.plane, self.m, self.points)
    }
}

pub fn write_arc(arc: &ArcSet) -> String {
    let pl = arc.plane();
    let mut out = format!("q={} m={}\n", pl.field(), arc.m());
    for p in arc.points() {
        let _ = writeln!(out, "{}", pl.format_point(p));
    }
    out
}

fn parse_header(line: &str) -> Result<(Field, usize)> {
    let mut field = None;
    let mut m = None;
    for tok in line.split_whitespace() {
        match tok.split_once('=') {
            Some(("q", v)) => field = Some(Field::parse(v).map_err(|e| Error::Parse(format!("header: {e}")))?),
            Some(("m", v)) => m = Some(v.parse::<usize>().map_err(|_| Error::Parse(format!("bad m {v:?}")))?),
            _ => return Err(Error::Parse(format!("unexpected header token {tok:?}"))),
        }
    }
    match (field, m) {
        (Some(f), Some(m)) if m >= 2 => Ok((f, m)),
        (Some(_), Some(m)) => Err(Error::Parse(format!("m = {m} is below 2"))),
        _ => Err(Error::Parse("header must read q=<p>^<a> m=<m>".into())),
    }
}

pub fn read_arc(text: &str) -> Result<ArcFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty arc file".into()))?;
    let (field, m) = parse_header(header)?;
    let plane = Plane::new(&field);
    let mut points = Vec::new();
    for (no, line) in lines {
        let p = plane
            .parse_point(line)
            .map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
        points.push(p);
    }
    Ok(ArcFile { plane, m, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_prime_field() {
        let f = Field::new(7, 1).unwrap();
        let pl = Plane::new(&f);
        let pts: Vec<Point> = pl.all_points().step_by(5).collect();
        let arc = ArcSet::from_points(&pl, 3, pts.clone());
        let text = write_arc(&arc);
        assert!(text.starts_with("q=7^1 m=3\n"));
        let back = read_arc(&text).unwrap();
        assert_eq!(back.m, 3);
        assert_eq!(back.points, arc.points());
    }

    #[test]
    fn round_trip_extension_field() {
        let f = Field::new(5, 2).unwrap();
        let pl = Plane::new(&f);
        let pts: Vec<Point> = pl.all_points().step_by(37).collect();
        let arc = ArcSet::from_points(&pl, 4, pts);
        let back = read_arc(&write_arc(&arc)).unwrap().into_arc();
        assert_eq!(back.points(), arc.points());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# an arc\n\nq=5^1 m=2\n0:0:1\n\n# infinity\n0:1:0\n";
        let a = read_arc(text).unwrap();
        assert_eq!(a.points.len(), 2);
    }

    #[test]
    fn malformed_files() {
        for bad in [
            "",
            "q=5^1\n0:0:1",
            "q=6^1 m=2\n",
            "q=5^1 m=x\n",
            "q=5^1 m=1\n",
            "q=5^1 m=2 extra\n",
            "q=5^1 m=2\n0:0\n",
            "q=5^1 m=2\n0:7:1\n",
            "q=5^1 m=2\n0:0:0\n",
        ] {
            assert!(matches!(read_arc(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }
}
