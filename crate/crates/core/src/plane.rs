//! The projective plane PG(2,q).
//!
//! Points and lines are normalized triples: the first nonzero coordinate in
//! the order z, x, y is scaled to one, so points read `(x:y:1)`,
//! `(1:y:0)` or `(0:1:0)` and lines `[u:v:1]`, `[1:v:0]` or `[0:1:0]`.
//! Both share one dense index, which is also the canonical enumeration order:
//!
//! | shape     | index        |
//! |-----------|--------------|
//! | `(x:y:1)` | `x*q + y`    |
//! | `(1:y:0)` | `q^2 + y`    |
//! | `(0:1:0)` | `q^2 + q`    |

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Point([Elem; 3]);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Line([Elem; 3]);

impl Point {
    pub fn coords(self) -> [Elem; 3] {
        self.0
    }

    pub fn is_affine(self) -> bool {
        self.0[2] == Elem::ONE
    }

    /// `(x, y)` for affine points.
    pub fn affine(self) -> Option<(Elem, Elem)> {
        self.is_affine().then_some((self.0[0], self.0[1]))
    }
}

impl Line {
    pub fn coords(self) -> [Elem; 3] {
        self.0
    }
}

fn normalize(f: &Field, t: [Elem; 3]) -> Result<[Elem; 3]> {
    let pivot = if !t[2].is_zero() {
        t[2]
    } else if !t[0].is_zero() {
        t[0]
    } else if !t[1].is_zero() {
        t[1]
    } else {
        return Err(Error::ZeroTriple);
    };
    let s = f.inv(pivot)?;
    Ok([f.mul(t[0], s), f.mul(t[1], s), f.mul(t[2], s)])
}

fn triple_index(q: u64, t: [Elem; 3]) -> usize {
    let idx = if t[2] == Elem::ONE {
        t[0].index() * q + t[1].index()
    } else if t[0] == Elem::ONE {
        q * q + t[1].index()
    } else {
        q * q + q
    };
    idx as usize
}

fn triple_at(f: &Field, q: u64, i: usize) -> [Elem; 3] {
    let i = i as u64;
    let el = |v: u64| f.elem(v).expect("index within field");
    if i < q * q {
        [el(i / q), el(i % q), Elem::ONE]
    } else if i < q * q + q {
        [Elem::ONE, el(i - q * q), Elem::ZERO]
    } else {
        [Elem::ZERO, Elem::ONE, Elem::ZERO]
    }
}

fn cross(f: &Field, a: [Elem; 3], b: [Elem; 3]) -> [Elem; 3] {
    let m = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

/// PG(2,q) over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    field: Field,
    q: u64,
}

impl Plane {
    pub fn new(field: &Field) -> Plane {
        Plane {
            field: field.clone(),
            q: field.q(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^2 + q + 1`, the number of points and of lines.
    pub fn size(&self) -> usize {
        (self.q * self.q + self.q + 1) as usize
    }

    pub fn point(&self, x: Elem, y: Elem, z: Elem) -> Result<Point> {
        self.check(&[x, y, z])?;
        Ok(Point(normalize(&self.field, [x, y, z])?))
    }

    pub fn affine_point(&self, x: Elem, y: Elem) -> Point {
        Point([x, y, Elem::ONE])
    }

    pub fn line(&self, u: Elem, v: Elem, w: Elem) -> Result<Line> {
        self.check(&[u, v, w])?;
        Ok(Line(normalize(&self.field, [u, v, w])?))
    }

    /// The line at infinity `z = 0`.
    pub fn line_at_infinity(&self) -> Line {
        Line([Elem::ZERO, Elem::ZERO, Elem::ONE])
    }

    /// `x = c`.
    pub fn vertical(&self, c: Elem) -> Line {
        Line(normalize(&self.field, [Elem::ONE, Elem::ZERO, self.field.neg(c)]).expect("u = 1"))
    }

    /// `y = t x + c`.
    pub fn slope_line(&self, t: Elem, c: Elem) -> Line {
        let f = &self.field;
        Line(normalize(f, [t, f.neg(Elem::ONE), c]).expect("v = -1 is nonzero"))
    }

    /// `(0:1:0)`, the vertical direction.
    pub fn vertical_infinite_point(&self) -> Point {
        Point([Elem::ZERO, Elem::ONE, Elem::ZERO])
    }

    fn check(&self, t: &[Elem]) -> Result<()> {
        match t.iter().find(|&&e| !self.field.contains(e)) {
            Some(e) => Err(Error::ElementOutOfRange(e.index())),
            None => Ok(()),
        }
    }

    pub fn incident(&self, p: Point, l: Line) -> bool {
        let f = &self.field;
        let [x, y, z] = p.0;
        let [u, v, w] = l.0;
        f.add(f.add(f.mul(u, x), f.mul(v, y)), f.mul(w, z)).is_zero()
    }

    pub fn line_through(&self, p: Point, q: Point) -> Result<Line> {
        if p == q {
            return Err(Error::EqualPoints);
        }
        Ok(Line(normalize(&self.field, cross(&self.field, p.0, q.0))?))
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, l: Line, m: Line) -> Result<Point> {
        if l == m {
            return Err(Error::EqualPoints);
        }
        Ok(Point(normalize(&self.field, cross(&self.field, l.0, m.0))?))
    }

    /// The `q+1` lines through `p`: slopes in element order, then the
    /// vertical (or, for points at infinity, the line at infinity).
    pub fn lines_through(&self, p: Point) -> Vec<Line> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.q as usize + 1);
        let [x, y, z] = p.0;
        if z == Elem::ONE {
            for t in f.elements() {
                out.push(self.slope_line(t, f.sub(y, f.mul(t, x))));
            }
            out.push(self.vertical(x));
        } else if x == Elem::ONE {
            for c in f.elements() {
                out.push(self.slope_line(y, c));
            }
            out.push(self.line_at_infinity());
        } else {
            for c in f.elements() {
                out.push(self.vertical(c));
            }
            out.push(self.line_at_infinity());
        }
        out
    }

    /// The `q+1` points of `l` in canonical index order.
    pub fn line_points(&self, l: Line) -> Vec<Point> {
        let f = &self.field;
        let [u, v, w] = l.0;
        let mut out = Vec::with_capacity(self.q as usize + 1);
        if !v.is_zero() {
            let vinv = f.inv(v).expect("nonzero");
            for x in f.elements() {
                let y = f.neg(f.mul(f.add(f.mul(u, x), w), vinv));
                out.push(Point([x, y, Elem::ONE]));
            }
            out.push(Point([Elem::ONE, f.neg(f.mul(u, vinv)), Elem::ZERO]));
        } else if !u.is_zero() {
            let x = f.neg(f.div(w, u).expect("nonzero"));
            for y in f.elements() {
                out.push(Point([x, y, Elem::ONE]));
            }
            out.push(self.vertical_infinite_point());
        } else {
            for y in f.elements() {
                out.push(Point([Elem::ONE, y, Elem::ZERO]));
            }
            out.push(self.vertical_infinite_point());
        }
        out
    }

    pub fn point_index(&self, p: Point) -> usize {
        triple_index(self.q, p.0)
    }

    pub fn line_index(&self, l: Line) -> usize {
        triple_index(self.q, l.0)
    }

    pub fn point_at(&self, i: usize) -> Point {
        assert!(i < self.size(), "point index out of range");
        Point(triple_at(&self.field, self.q, i))
    }

    pub fn line_at(&self, i: usize) -> Line {
        assert!(i < self.size(), "line index out of range");
        Line(triple_at(&self.field, self.q, i))
    }

    pub fn all_points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size()).map(|i| self.point_at(i))
    }

    pub fn all_lines(&self) -> impl Iterator<Item = Line> + '_ {
        (0..self.size()).map(|i| self.line_at(i))
    }

    /// `"x:y:z"` with each coordinate in the field's element syntax.
    pub fn format_point(&self, p: Point) -> String {
        self.format_triple(p.0, ":")
    }

    /// `"[u:v:w]"`.
    pub fn format_line(&self, l: Line) -> String {
        format!("[{}]", self.format_triple(l.0, ":"))
    }

    fn format_triple(&self, t: [Elem; 3], sep: &str) -> String {
        t.iter()
            .map(|&e| self.field.format_elem(e))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn parse_point(&self, text: &str) -> Result<Point> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected x:y:z, got {text:?}")));
        }
        let c = |s: &str| self.field.parse_elem(s);
        self.point(c(parts[0])?, c(parts[1])?, c(parts[2])?)
    }

    /// Accepts `"[u:v:w]"` or bare `"u:v:w"`.
    pub fn parse_line(&self, text: &str) -> Result<Line> {
        let text = text.trim();
        let inner = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(text);
        let parts: Vec<&str> = inner.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected [u:v:w], got {text:?}")));
        }
        let c = |s: &str| self.field.parse_elem(s);
        self.line(c(parts[0])?, c(parts[1])?, c(parts[2])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn plane(p: u64, a: u32) -> Plane {
        Plane::new(&Field::new(p, a).unwrap())
    }

    fn el(pl: &Plane, v: i64) -> Elem {
        pl.field().from_int(v)
    }

    #[test]
    fn incidence_examples() {
        let pl = plane(7, 1);
        let (z, o) = (Elem::ZERO, Elem::ONE);
        let y0 = pl.line(z, o, z).unwrap();
        assert!(pl.incident(pl.point(z, z, o).unwrap(), y0));
        let diag = pl.line(o, el(&pl, -1), z).unwrap();
        assert!(pl.incident(pl.point(o, o, o).unwrap(), diag));
        assert!(pl.incident(pl.point(o, z, z).unwrap(), pl.line_at_infinity()));
    }

    #[test]
    fn line_through_examples() {
        let pl = plane(5, 1);
        let (z, o) = (Elem::ZERO, Elem::ONE);
        let l = pl.line_through(pl.affine_point(z, z), pl.affine_point(o, z)).unwrap();
        assert_eq!(l, pl.line(z, o, z).unwrap());
        let inf = pl
            .line_through(pl.point(o, z, z).unwrap(), pl.point(z, o, z).unwrap())
            .unwrap();
        assert_eq!(inf, pl.line_at_infinity());
        let a = el(&pl, 3);
        let v = pl
            .line_through(pl.affine_point(a, o), pl.affine_point(a, el(&pl, 4)))
            .unwrap();
        assert_eq!(v, pl.vertical(a));
        let p = pl.affine_point(o, o);
        assert_eq!(pl.line_through(p, p), Err(Error::EqualPoints));
        assert_eq!(pl.point(z, z, z), Err(Error::ZeroTriple));
    }

    #[test]
    fn line_at_infinity_points() {
        let pl = plane(3, 1);
        let pts = pl.line_points(pl.line_at_infinity());
        let want: Vec<Point> = [(1, 0), (1, 1), (1, 2), (0, 1)]
            .iter()
            .map(|&(x, y)| pl.point(el(&pl, x), el(&pl, y), Elem::ZERO).unwrap())
            .collect();
        assert_eq!(pts, want);
    }

    #[test]
    fn counts() {
        assert_eq!(plane(2, 1).all_points().count(), 7);
        assert_eq!(plane(2, 1).all_lines().count(), 7);
        assert_eq!(plane(11, 1).size(), 133);
        assert_eq!(plane(17, 2).size(), 83_811);
        assert_eq!(
            plane(3, 1)
                .lines_through(plane(3, 1).affine_point(Elem::ZERO, Elem::ZERO))
                .len(),
            4
        );
        let pl = plane(7, 1);
        let pencil = pl.lines_through(pl.point(Elem::ONE, el(&pl, 2), Elem::ZERO).unwrap());
        assert_eq!(pencil.len(), 8);
        assert!(pencil.contains(&pl.line_at_infinity()));
    }

    #[test]
    fn index_round_trip_and_order() {
        let pl = plane(3, 2);
        for i in 0..pl.size() {
            assert_eq!(pl.point_index(pl.point_at(i)), i);
            assert_eq!(pl.line_index(pl.line_at(i)), i);
        }
        assert!(pl.point_at(0).is_affine());
        assert_eq!(pl.point_at(pl.size() - 1), pl.vertical_infinite_point());
    }

    /// Every axiom of a projective plane, checked exhaustively.
    fn check_axioms(pl: &Plane) {
        let pts: Vec<Point> = pl.all_points().collect();
        let lines: Vec<Line> = pl.all_lines().collect();
        let q1 = pl.q() as usize + 1;
        for &l in &lines {
            let on: Vec<Point> = pts.iter().copied().filter(|&p| pl.incident(p, l)).collect();
            assert_eq!(on.len(), q1);
            assert_eq!(pl.line_points(l), on, "line_points order and content");
        }
        for &p in &pts {
            let through: HashSet<Line> = pl.lines_through(p).into_iter().collect();
            assert_eq!(through.len(), q1);
            assert!(through.iter().all(|&l| pl.incident(p, l)));
        }
        for (i, &p) in pts.iter().enumerate() {
            for &r in &pts[i + 1..] {
                let l = pl.line_through(p, r).unwrap();
                assert_eq!(l, pl.line_through(r, p).unwrap());
                let common = lines
                    .iter()
                    .filter(|&&m| pl.incident(p, m) && pl.incident(r, m))
                    .count();
                assert_eq!(common, 1);
                assert!(pl.incident(p, l) && pl.incident(r, l));
            }
        }
        for (i, &l) in lines.iter().enumerate() {
            for &m in &lines[i + 1..] {
                let x = pl.meet(l, m).unwrap();
                assert!(pl.incident(x, l) && pl.incident(x, m));
            }
        }
    }

    #[test]
    fn axioms_small_planes() {
        for (p, a) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)] {
            check_axioms(&plane(p, a));
        }
    }

    #[test]
    fn point_text_round_trip() {
        let pl = plane(5, 2);
        for p in pl.all_points().step_by(7) {
            assert_eq!(pl.parse_point(&pl.format_point(p)).unwrap(), p);
        }
        assert!(pl.parse_point("1:2").is_err());
        for l in pl.all_lines() {
            assert_eq!(pl.parse_line(&pl.format_line(l)).unwrap(), l);
        }
        assert_eq!(pl.parse_line("0:0:1").unwrap(), pl.line_at_infinity());
        assert!(pl.parse_line("[1:2]").is_err());
    }

    proptest! {
        #[test]
        fn normalization_is_scale_invariant(x in 0i64..13, y in 0i64..13, z in 0i64..13, s in 1i64..13) {
            prop_assume!((x, y, z) != (0, 0, 0));
            let pl = plane(13, 1);
            let f = pl.field().clone();
            let p = pl.point(f.from_int(x), f.from_int(y), f.from_int(z)).unwrap();
            let ps = pl.point(f.from_int(x * s), f.from_int(y * s), f.from_int(z * s)).unwrap();
            prop_assert_eq!(p, ps);
        }
    }
}
