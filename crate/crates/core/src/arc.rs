//! Point sets with no `m + 1` collinear points, coverage, and completion.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{Curve, Family};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::plane::{Line, Plane, Point};

/// A point set of PG(2,q) together with the number of its points on every line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSet {
    plane: Plane,
    m: usize,
    member: Vec<bool>,
    len: usize,
    line_counts: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArcStatus {
    /// No line carries more than `m` points.
    pub arc_ok: bool,
    /// Some line carries exactly `m` points.
    pub has_m_secant: bool,
}

impl ArcSet {
    pub fn new(plane: &Plane, m: usize) -> ArcSet {
        let n = plane.size();
        ArcSet {
            plane: plane.clone(),
            m,
            member: vec![false; n],
            len: 0,
            line_counts: vec![0; n],
        }
    }

    pub fn from_points(plane: &Plane, m: usize, points: impl IntoIterator<Item = Point>) -> ArcSet {
        let mut a = ArcSet::new(plane, m);
        for p in points {
            a.add(p);
        }
        a
    }

    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, p: Point) -> bool {
        self.member[self.plane.point_index(p)]
    }

    /// Members in canonical order.
    pub fn points(&self) -> Vec<Point> {
        self.member
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.plane.point_at(i))
            .collect()
    }

    fn pencil(&self, p: Point) -> impl Iterator<Item = usize> + '_ {
        self.plane
            .lines_through(p)
            .into_iter()
            .map(|l| self.plane.line_index(l))
    }

    /// Inserts `p`; `false` if it was already present. Does not check the arc
    /// property.
    pub fn add(&mut self, p: Point) -> bool {
        let i = self.plane.point_index(p);
        if self.member[i] {
            return false;
        }
        self.member[i] = true;
        self.len += 1;
        let lines: Vec<usize> = self.pencil(p).collect();
        for l in lines {
            self.line_counts[l] += 1;
        }
        true
    }

    pub fn remove(&mut self, p: Point) -> bool {
        let i = self.plane.point_index(p);
        if !self.member[i] {
            return false;
        }
        self.member[i] = false;
        self.len -= 1;
        let lines: Vec<usize> = self.pencil(p).collect();
        for l in lines {
            self.line_counts[l] -= 1;
        }
        true
    }

    pub fn line_count(&self, l: Line) -> usize {
        self.line_counts[self.plane.line_index(l)] as usize
    }

    /// Counts indexed by line index.
    pub fn line_counts(&self) -> &[u32] {
        &self.line_counts
    }

    /// Line counts computed from scratch, for checking the incremental ones.
    pub fn recount(&self) -> Vec<u32> {
        self.plane
            .all_lines()
            .map(|l| {
                self.plane
                    .line_points(l)
                    .into_iter()
                    .filter(|&p| self.contains(p))
                    .count() as u32
            })
            .collect()
    }

    pub fn status(&self) -> ArcStatus {
        let m = self.m as u32;
        ArcStatus {
            arc_ok: self.line_counts.iter().all(|&c| c <= m),
            has_m_secant: self.line_counts.contains(&m),
        }
    }

    /// First line carrying more than `m` points, with its count.
    pub fn overfull_line(&self) -> Option<(Line, usize)> {
        let m = self.m as u32;
        self.line_counts
            .iter()
            .position(|&c| c > m)
            .map(|i| (self.plane.line_at(i), self.line_counts[i] as usize))
    }

    fn covered(&self, p: Point) -> bool {
        let m = self.m as u32;
        self.pencil(p).any(|l| self.line_counts[l] >= m)
    }

    /// Whether some line through the external point `p` already holds `m`
    /// points, so that `p` cannot join the arc.
    pub fn m_covers(&self, p: Point) -> Result<bool> {
        if self.contains(p) {
            return Err(Error::PointInArc);
        }
        Ok(self.covered(p))
    }

    /// External points not yet covered, in canonical order.
    pub fn uncovered_points(&self) -> Vec<Point> {
        (0..self.plane.size())
            .into_par_iter()
            .filter(|&i| !self.member[i])
            .map(|i| self.plane.point_at(i))
            .filter(|&p| !self.covered(p))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.status().arc_ok && self.uncovered_points().is_empty()
    }

    /// External points whose addition keeps the arc property, found by
    /// tallying arc points along the lines through each candidate. Empty
    /// exactly when the arc is complete.
    pub fn maximality_probe(&self) -> Vec<Point> {
        let arc = self.points();
        let m = self.m;
        (0..self.plane.size())
            .into_par_iter()
            .filter(|&i| !self.member[i])
            .map(|i| self.plane.point_at(i))
            .filter(|&p| {
                let mut tally: HashMap<Line, usize> = HashMap::new();
                for &a in &arc {
                    let l = self.plane.line_through(p, a).expect("p is external");
                    *tally.entry(l).or_default() += 1;
                }
                tally.values().all(|&c| c < m)
            })
            .collect()
    }

    fn ensure_arc(&self) -> Result<()> {
        match self.overfull_line() {
            Some((l, count)) => Err(Error::ArcViolation {
                line: self.plane.format_line(l),
                count,
            }),
            None => Ok(()),
        }
    }

    /// Adds, for each line in turn, every point of it that is neither in the
    /// arc nor covered, then closes the remaining gaps with [`Self::safety_net`].
    pub fn complete_from_lines(&mut self, lines: &[Line]) -> Result<CompletionLog> {
        self.ensure_arc()?;
        let mut per_line = Vec::with_capacity(lines.len());
        for &l in lines {
            let mut added = Vec::new();
            for p in self.plane.line_points(l) {
                if !self.contains(p) && !self.covered(p) {
                    self.add(p);
                    added.push(p);
                }
            }
            per_line.push((l, added));
        }
        let safety = self.safety_net();
        debug_assert!(self.status().arc_ok);
        Ok(CompletionLog { per_line, safety })
    }

    /// One canonical pass adding every point that is still uncovered. Coverage
    /// only grows, so the result is complete.
    pub fn safety_net(&mut self) -> Vec<Point> {
        let mut added = Vec::new();
        for i in 0..self.plane.size() {
            if self.member[i] {
                continue;
            }
            let p = self.plane.point_at(i);
            if !self.covered(p) {
                self.add(p);
                added.push(p);
            }
        }
        added
    }

    /// Removes the canonically last points of each overfull line until
    /// none is left. Returns the removed points.
    pub fn trim(&mut self) -> Vec<Point> {
        let mut removed = Vec::new();
        while let Some((l, count)) = self.overfull_line() {
            let on: Vec<Point> = self
                .plane
                .line_points(l)
                .into_iter()
                .filter(|&p| self.contains(p))
                .collect();
            for &p in on.iter().rev().take(count - self.m) {
                self.remove(p);
                removed.push(p);
            }
        }
        removed
    }
}

#[derive(Clone, Debug, Default)]
pub struct CompletionLog {
    /// Points added along each requested line, in order.
    pub per_line: Vec<(Line, Vec<Point>)>,
    /// Points added by the final pass.
    pub safety: Vec<Point>,
}

impl CompletionLog {
    pub fn line_additions(&self) -> usize {
        self.per_line.iter().map(|(_, a)| a.len()).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: i64,
    pub bound: i64,
    pub holds: bool,
    /// Not guaranteed at this field size; reported only.
    pub advisory: bool,
}

impl BoundCheck {
    pub fn at_most(name: &str, value: i64, bound: i64, advisory: bool) -> BoundCheck {
        BoundCheck {
            name: name.to_string(),
            value,
            bound,
            holds: value <= bound,
            advisory,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LineLog {
    pub line: String,
    pub added: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Additions {
    pub lambda: usize,
    pub safety: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildReport {
    pub field: String,
    pub m: usize,
    pub curve: String,
    pub hypotheses_ok: bool,
    pub violations: Vec<String>,
    pub curve_points: usize,
    pub seed_trimmed: Vec<String>,
    pub completion_lines: usize,
    pub size: usize,
    pub additions: Additions,
    pub arc_ok: bool,
    pub has_m_secant: bool,
    pub complete: bool,
    pub per_line: Vec<LineLog>,
    pub safety_points: Vec<String>,
    pub bound_checks: Vec<BoundCheck>,
}

impl BuildReport {
    /// Every non-advisory bound holds.
    pub fn bounds_ok(&self) -> bool {
        self.bound_checks.iter().all(|b| b.holds || b.advisory)
    }
}

/// The lines a curve's arc is completed along: `y = 0` and the line at
/// infinity for the monomial family, the exceptional set otherwise.
pub fn completion_lines(curve: &Curve) -> Vec<Line> {
    let pl = curve.plane();
    match curve.family() {
        Family::Monomial => vec![pl.slope_line(Elem::ZERO, Elem::ZERO), pl.line_at_infinity()],
        Family::Hyperelliptic { .. } => curve.compute_lambda(),
    }
}

/// Seeds with the curve's rational points, completes along
/// [`completion_lines`] and verifies the result.
pub fn build_complete_arc(curve: &Curve) -> Result<(ArcSet, BuildReport)> {
    let pl = curve.plane();
    let m = curve.m();
    let seed = curve.rational_points();
    let curve_points = seed.len();
    let mut arc = ArcSet::from_points(pl, m, seed);
    let trimmed = arc.trim();
    let lines = completion_lines(curve);
    let log = arc.complete_from_lines(&lines)?;
    let status = arc.status();
    let complete = status.arc_ok && arc.uncovered_points().is_empty();

    let q = pl.q() as i64;
    let mi = m as i64;
    let k = log.line_additions() as i64;
    let bound_checks = match curve.family() {
        Family::Monomial => vec![BoundCheck::at_most(
            "size <= q + 2m - 1",
            arc.len() as i64,
            q + 2 * mi - 1,
            true,
        )],
        Family::Hyperelliptic { .. } => {
            let lb = curve.lambda_bound() as i64;
            vec![
                BoundCheck::at_most("|lambda| <= 7m^2 + 3m + 2", lines.len() as i64, lb, false),
                BoundCheck::at_most("k <= (7m^2 + 3m + 2) m", k, lb * mi, false),
            ]
        }
    };
    let fmt = |p: &Point| pl.format_point(*p);
    let report = BuildReport {
        field: pl.field().to_string(),
        m,
        curve: curve.describe(),
        hypotheses_ok: curve.hypotheses_ok(),
        violations: curve.validate().iter().map(|v| v.to_string()).collect(),
        curve_points,
        seed_trimmed: trimmed.iter().map(fmt).collect(),
        completion_lines: lines.len(),
        size: arc.len(),
        additions: Additions {
            lambda: k as usize,
            safety: log.safety.len(),
        },
        arc_ok: status.arc_ok,
        has_m_secant: status.has_m_secant,
        complete,
        per_line: log
            .per_line
            .iter()
            .map(|(l, a)| LineLog {
                line: pl.format_line(*l),
                added: a.iter().map(fmt).collect(),
            })
            .collect(),
        safety_points: log.safety.iter().map(fmt).collect(),
        bound_checks,
    };
    Ok((arc, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::table_g;
    use crate::gf::Field;
    use proptest::prelude::*;

    fn plane(q: u64) -> Plane {
        Plane::new(&Field::new(q, 1).unwrap())
    }

    /// Coverage by scanning the pencil of `p` against the member list.
    fn covers_oracle(a: &ArcSet, p: Point) -> bool {
        let pts = a.points();
        a.plane()
            .lines_through(p)
            .into_iter()
            .any(|l| pts.iter().filter(|&&x| a.plane().incident(x, l)).count() >= a.m())
    }

    #[test]
    fn status_examples() {
        let pl = plane(7);
        let f = pl.field().clone();
        let on_axis = |n: i64| -> Vec<Point> { (0..n).map(|i| pl.affine_point(f.from_int(i), Elem::ZERO)).collect() };
        let three = ArcSet::from_points(&pl, 2, on_axis(3));
        assert!(!three.status().arc_ok);
        let five = ArcSet::from_points(&pl, 5, on_axis(5));
        assert_eq!(
            five.status(),
            ArcStatus {
                arc_ok: true,
                has_m_secant: true
            }
        );
        let empty = ArcSet::new(&pl, 3);
        assert_eq!(
            empty.status(),
            ArcStatus {
                arc_ok: true,
                has_m_secant: false
            }
        );
        assert_eq!(empty.uncovered_points().len(), pl.size());
    }

    #[test]
    fn covering_examples() {
        let pl = plane(7);
        let f = pl.field().clone();
        let a = ArcSet::from_points(&pl, 3, (0..3).map(|i| pl.affine_point(f.from_int(i), Elem::ZERO)));
        assert!(a.m_covers(pl.affine_point(f.from_int(5), Elem::ZERO)).unwrap());
        assert_eq!(
            a.m_covers(pl.affine_point(Elem::ZERO, Elem::ZERO)),
            Err(Error::PointInArc)
        );
        let b = ArcSet::from_points(&pl, 3, (0..2).map(|i| pl.affine_point(f.from_int(i), Elem::ONE)));
        assert!(pl
            .all_points()
            .filter(|&p| !b.contains(p))
            .all(|p| !b.m_covers(p).unwrap()));
    }

    #[test]
    fn completion_of_complete_arc_is_noop() {
        let pl = plane(5);
        let mut a = ArcSet::new(&pl, 2);
        a.complete_from_lines(&[]).unwrap();
        assert!(a.is_complete());
        let before = a.clone();
        let log = a.complete_from_lines(&pl.all_lines().collect::<Vec<_>>()).unwrap();
        assert_eq!(a, before);
        assert_eq!(log.line_additions() + log.safety.len(), 0);
    }

    #[test]
    fn completion_rejects_non_arc() {
        let pl = plane(5);
        let f = pl.field().clone();
        let mut a = ArcSet::from_points(&pl, 2, (0..3).map(|i| pl.affine_point(f.from_int(i), Elem::ZERO)));
        assert!(matches!(
            a.complete_from_lines(&[]),
            Err(Error::ArcViolation { count: 3, .. })
        ));
    }

    #[test]
    fn trimming_restores_arc_property() {
        let pl = plane(7);
        let mut a = ArcSet::from_points(&pl, 3, pl.line_points(pl.line_at(5)));
        let removed = a.trim();
        assert_eq!(removed.len(), 5);
        assert!(a.status().arc_ok);
        assert_eq!(a.line_counts(), &a.recount()[..]);
    }

    #[test]
    fn monomial_build_small() {
        for q in [11u64, 13] {
            let f = Field::new(q, 1).unwrap();
            let c = Curve::monomial(&f, 5).unwrap();
            let (arc, report) = build_complete_arc(&c).unwrap();
            assert!(report.complete && report.arc_ok);
            assert!(arc.maximality_probe().is_empty());
            for (_, added) in &completion_log(&c).per_line {
                assert!(added.len() <= 5);
            }
        }
    }

    fn completion_log(c: &Curve) -> CompletionLog {
        let mut arc = ArcSet::from_points(c.plane(), c.m(), c.rational_points());
        arc.trim();
        arc.complete_from_lines(&completion_lines(c)).unwrap()
    }

    #[test]
    fn hyperelliptic_build_small() {
        let f = Field::new(13, 1).unwrap();
        let g = (3..)
            .map(|b| table_g(&f, 8, f.from_int(2), f.from_int(b)))
            .find(|g| g.is_squarefree())
            .unwrap();
        let c = Curve::hyperelliptic(&f, 8, 5, g).unwrap();
        let (arc, report) = build_complete_arc(&c).unwrap();
        assert!(report.complete);
        assert!(report.bounds_ok());
        assert!(arc.maximality_probe().is_empty());
        assert_eq!(arc.line_counts(), &arc.recount()[..]);
        let (again, _) = build_complete_arc(&c).unwrap();
        assert_eq!(arc.points(), again.points());
    }

    #[test]
    fn curve_residual_matches_oracle() {
        let f = Field::new(11, 1).unwrap();
        let c = Curve::monomial(&f, 5).unwrap();
        let a = ArcSet::from_points(c.plane(), 5, c.rational_points());
        let oracle: Vec<Point> = c
            .plane()
            .all_points()
            .filter(|&p| !a.contains(p) && !covers_oracle(&a, p))
            .collect();
        assert_eq!(a.uncovered_points(), oracle);
        assert!(!oracle.is_empty());
    }

    #[test]
    fn adding_any_point_to_complete_arc_breaks_it() {
        let pl = plane(7);
        let mut a = ArcSet::new(&pl, 3);
        a.safety_net();
        assert!(a.is_complete());
        for p in pl.all_points().filter(|&p| !a.contains(p)) {
            let mut b = a.clone();
            b.add(p);
            assert!(!b.status().arc_ok);
        }
    }

    proptest! {
        #[test]
        fn incremental_counts_match_recount(ops in prop::collection::vec((any::<bool>(), 0usize..57), 0..60)) {
            let pl = plane(7);
            let mut a = ArcSet::new(&pl, 3);
            for (add, i) in ops {
                let p = pl.point_at(i);
                if add { a.add(p); } else { a.remove(p); }
            }
            prop_assert_eq!(a.line_counts(), &a.recount()[..]);
            prop_assert_eq!(a.len(), a.points().len());
        }

        #[test]
        fn covering_matches_pencil_scan(idx in prop::collection::btree_set(0usize..133, 0..25), m in 2usize..5) {
            let pl = plane(11);
            let mut a = ArcSet::from_points(&pl, m, idx.into_iter().map(|i| pl.point_at(i)));
            a.trim();
            for p in pl.all_points().filter(|&p| !a.contains(p)) {
                prop_assert_eq!(a.m_covers(p).unwrap(), covers_oracle(&a, p));
            }
        }

        #[test]
        fn completion_yields_complete_arcs(idx in prop::collection::btree_set(0usize..133, 0..20), m in 2usize..5) {
            let pl = plane(11);
            let mut a = ArcSet::from_points(&pl, m, idx.into_iter().map(|i| pl.point_at(i)));
            a.trim();
            let lines: Vec<Line> = pl.all_lines().step_by(17).collect();
            let log = a.complete_from_lines(&lines).unwrap();
            prop_assert!(log.per_line.iter().all(|(_, s)| s.len() <= m));
            prop_assert!(a.is_complete());
            prop_assert!(a.maximality_probe().is_empty());
        }
    }
}
