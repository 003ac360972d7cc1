//! The two curve families: the monomial curve `y = x^m` and the
//! hyperelliptic-type curve `x^n y^2 = g(x)` with `n = m - r - 2`.
//!
//! Both have degree `m` and a single point on the line at infinity, `(0:1:0)`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{is_prime, Elem, Field};
use crate::plane::{Line, Plane, Point};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Monomial,
    Hyperelliptic { r: usize, g: Poly, h: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    plane: Plane,
    m: usize,
    family: Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    /// The equation does not describe a curve of the family at all.
    Structural,
    /// A standing hypothesis of the completion theorems fails; every
    /// computation still runs.
    Hypothesis,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub severity: Severity,
    pub condition: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Structural => "structural",
            Severity::Hypothesis => "hypothesis",
        };
        write!(f, "{tag}: {}", self.condition)
    }
}

fn violation(out: &mut Vec<Violation>, severity: Severity, ok: bool, condition: &str) {
    if !ok {
        out.push(Violation {
            severity,
            condition: condition.to_string(),
        });
    }
}

fn divides(p: u64, n: i64) -> bool {
    n.rem_euclid(p as i64) == 0
}

pub fn validate_monomial(field: &Field, m: usize) -> Vec<Violation> {
    let p = field.characteristic();
    let mut out = Vec::new();
    violation(&mut out, Severity::Structural, m >= 2, "m >= 2");
    violation(&mut out, Severity::Hypothesis, m >= 5, "m >= 5");
    violation(
        &mut out,
        Severity::Hypothesis,
        !divides(p, m as i64 * (m as i64 - 1)),
        "p does not divide m(m-1)",
    );
    out
}

pub fn validate_hyperelliptic(field: &Field, m: usize, r: usize, g: &Poly) -> Vec<Violation> {
    use Severity::*;
    let p = field.characteristic();
    let mut out = Vec::new();
    violation(&mut out, Structural, p != 2, "p odd");
    violation(
        &mut out,
        Structural,
        g.field() == field,
        "g defined over the curve's field",
    );
    violation(&mut out, Structural, r + 3 <= m, "m - r - 2 >= 1");
    violation(&mut out, Structural, g.degree() == Some(m), "deg g = m");
    violation(&mut out, Structural, !g.coeff(0).is_zero(), "g(0) != 0");
    violation(&mut out, Structural, g.is_squarefree(), "g squarefree");
    violation(&mut out, Hypothesis, is_prime(r as u64), "r prime");
    violation(&mut out, Hypothesis, 2 * r > m, "m/2 < r");
    let n = m as i64 - r as i64 - 2;
    violation(&mut out, Hypothesis, !divides(p, r as i64), "p does not divide r");
    violation(&mut out, Hypothesis, !divides(p, r as i64 + 2), "p does not divide r+2");
    violation(&mut out, Hypothesis, n < 1 || !divides(p, n), "p does not divide m-r-2");
    out
}

fn structural_error(violations: &[Violation]) -> Result<()> {
    let bad: Vec<String> = violations
        .iter()
        .filter(|v| v.severity == Severity::Structural)
        .map(|v| v.condition.clone())
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidCurve(bad.join("; ")))
    }
}

/// Smallest prime `r` with `m/2 < r <= m-3` and `p` dividing none of
/// `r`, `r+2`, `m-r-2`.
pub fn select_r(m: usize, p: u64) -> Result<usize> {
    let mut reasons = Vec::new();
    for r in (m / 2 + 1)..=m.saturating_sub(2) {
        if !is_prime(r as u64) || 2 * r <= m {
            continue;
        }
        let n = m - r - 2;
        if n == 0 {
            reasons.push(format!("r={r}: m-r-2 = 0"));
            continue;
        }
        let bad: Vec<String> = [("r", r), ("r+2", r + 2), ("m-r-2", n)]
            .iter()
            .filter(|(_, v)| (*v as u64).is_multiple_of(p))
            .map(|(name, v)| format!("p | {name} = {v}"))
            .collect();
        if bad.is_empty() {
            return Ok(r);
        }
        reasons.push(format!("r={r}: {}", bad.join(", ")));
    }
    if reasons.is_empty() {
        reasons.push("no prime in (m/2, m-2]".into());
    }
    Err(Error::NoAdmissiblePrime {
        m,
        p,
        reasons: reasons.join("; "),
    })
}

/// `x^m + alpha x^2 + alpha x + beta`, the family behind the point-count tables.
pub fn table_g(field: &Field, m: usize, alpha: Elem, beta: Elem) -> Poly {
    let mut c = vec![Elem::ZERO; m + 1];
    c[0] = beta;
    c[1] = alpha;
    c[2] = field.add(c[2], alpha);
    c[m] = field.add(c[m], Elem::ONE);
    Poly::new(field, c)
}

/// Where a line meets the curve in the affine part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    Rational(Point),
    /// An orbit of `degree` conjugate points over an extension.
    Conjugate {
        degree: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Meeting {
    pub locus: Locus,
    /// Intersection multiplicity at each point of the locus.
    pub multiplicity: usize,
}

impl Meeting {
    /// Number of closure points times their multiplicity.
    pub fn weight(&self) -> usize {
        match self.locus {
            Locus::Rational(_) => self.multiplicity,
            Locus::Conjugate { degree } => degree * self.multiplicity,
        }
    }

    fn points(&self) -> usize {
        match self.locus {
            Locus::Rational(_) => 1,
            Locus::Conjugate { degree } => degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub affine: Vec<Meeting>,
    pub infinity_multiplicity: usize,
    /// Distinct intersection points over the algebraic closure, the point at
    /// infinity included when it is met.
    pub distinct_closure_points: usize,
    /// Some multiplicity is divisible by the characteristic.
    pub inseparable: bool,
}

impl IntersectionProfile {
    /// Sum of all intersection multiplicities; equals the curve degree.
    pub fn total(&self) -> usize {
        self.affine.iter().map(Meeting::weight).sum::<usize>() + self.infinity_multiplicity
    }

    pub fn multiplicity_at(&self, p: Point) -> usize {
        self.affine
            .iter()
            .find(|e| e.locus == Locus::Rational(p))
            .map_or(0, |e| e.multiplicity)
    }

    pub fn rational_points(&self) -> Vec<Point> {
        self.affine
            .iter()
            .filter_map(|e| match e.locus {
                Locus::Rational(p) => Some(p),
                Locus::Conjugate { .. } => None,
            })
            .collect()
    }

    /// Multiplicities in non-increasing order, the point at infinity included.
    pub fn multiplicity_pattern(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .affine
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.multiplicity, e.points()))
            .collect();
        if self.infinity_multiplicity > 0 {
            v.push(self.infinity_multiplicity);
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// A line split as `y = t x + c`, `x = c`, or the line at infinity.
enum LineShape {
    Slope(Elem, Elem),
    Vertical(Elem),
    Infinity,
}

fn shape(f: &Field, l: Line) -> LineShape {
    let [u, v, w] = l.coords();
    if !v.is_zero() {
        let vinv = f.inv(v).expect("nonzero");
        LineShape::Slope(f.neg(f.mul(u, vinv)), f.neg(f.mul(w, vinv)))
    } else if !u.is_zero() {
        LineShape::Vertical(f.neg(f.div(w, u).expect("nonzero")))
    } else {
        LineShape::Infinity
    }
}

impl Curve {
    /// `y = x^m`.
    pub fn monomial(field: &Field, m: usize) -> Result<Curve> {
        structural_error(&validate_monomial(field, m))?;
        Ok(Curve {
            plane: Plane::new(field),
            m,
            family: Family::Monomial,
        })
    }

    /// `x^(m-r-2) y^2 = g(x)`.
    pub fn hyperelliptic(field: &Field, m: usize, r: usize, g: Poly) -> Result<Curve> {
        structural_error(&validate_hyperelliptic(field, m, r, &g))?;
        let n = (m - r - 2) as i64;
        let h = &(&Poly::x(field) * &g.derivative()) - &g.scale(field.from_int(n));
        Ok(Curve {
            plane: Plane::new(field),
            m,
            family: Family::Hyperelliptic { r, g, h },
        })
    }

    pub fn field(&self) -> &Field {
        self.plane.field()
    }

    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn is_hyperelliptic(&self) -> bool {
        matches!(self.family, Family::Hyperelliptic { .. })
    }

    pub fn r(&self) -> Option<usize> {
        match self.family {
            Family::Hyperelliptic { r, .. } => Some(r),
            Family::Monomial => None,
        }
    }

    /// The exponent `m - r - 2` of `x`.
    pub fn n(&self) -> Option<usize> {
        self.r().map(|r| self.m - r - 2)
    }

    pub fn g(&self) -> Option<&Poly> {
        match &self.family {
            Family::Hyperelliptic { g, .. } => Some(g),
            Family::Monomial => None,
        }
    }

    /// `-(m-r-2) g + x g'`.
    pub fn h(&self) -> Option<&Poly> {
        match &self.family {
            Family::Hyperelliptic { h, .. } => Some(h),
            Family::Monomial => None,
        }
    }

    /// Genus of the smooth model (`floor(m/2)` for the hyperelliptic family).
    pub fn genus(&self) -> usize {
        match self.family {
            Family::Monomial => 0,
            Family::Hyperelliptic { .. } => self.m / 2,
        }
    }

    /// All unmet conditions; after construction only hypothesis-level ones remain.
    pub fn validate(&self) -> Vec<Violation> {
        match &self.family {
            Family::Monomial => validate_monomial(self.field(), self.m),
            Family::Hyperelliptic { r, g, .. } => validate_hyperelliptic(self.field(), self.m, *r, g),
        }
    }

    pub fn hypotheses_ok(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn describe(&self) -> String {
        match &self.family {
            Family::Monomial => format!("y = x^{} over F_{}", self.m, self.field()),
            Family::Hyperelliptic { g, .. } => {
                format!("x^{} y^2 = {:?} over F_{}", self.n().unwrap_or(0), g, self.field())
            }
        }
    }

    /// Value of the affine equation at `(x, y)`.
    pub fn equation(&self, x: Elem, y: Elem) -> Elem {
        let f = self.field();
        match &self.family {
            Family::Monomial => f.sub(y, f.pow(x, self.m as u64)),
            Family::Hyperelliptic { g, .. } => {
                let n = self.m - self.r().unwrap_or(0) - 2;
                f.sub(f.mul(f.pow(x, n as u64), f.square(y)), g.eval(x))
            }
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match p.affine() {
            Some((x, y)) => self.equation(x, y).is_zero(),
            None => p == self.plane.vertical_infinite_point(),
        }
    }

    /// The `y` values over `x`, ascending.
    pub fn fiber(&self, x: Elem) -> Vec<Elem> {
        let f = self.field();
        match &self.family {
            Family::Monomial => vec![f.pow(x, self.m as u64)],
            Family::Hyperelliptic { g, .. } => {
                if x.is_zero() {
                    return Vec::new();
                }
                let n = self.n().unwrap_or(0) as u64;
                let v = f.div(g.eval(x), f.pow(x, n)).expect("x nonzero");
                if v.is_zero() {
                    return vec![Elem::ZERO];
                }
                match f.sqrt(v) {
                    Ok(y) => {
                        let mut ys = vec![y, f.neg(y)];
                        ys.sort();
                        ys
                    }
                    Err(_) => Vec::new(),
                }
            }
        }
    }

    /// Points of the curve in PG(2,q), in canonical order; `(0:1:0)` last.
    pub fn rational_points(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .field()
            .elements()
            .flat_map(|x| self.fiber(x).into_iter().map(move |y| self.plane.affine_point(x, y)))
            .collect();
        out.push(self.plane.vertical_infinite_point());
        out
    }

    /// Number of affine points, via the quadratic character for the
    /// hyperelliptic family.
    pub fn count_affine(&self) -> usize {
        let f = self.field();
        match &self.family {
            Family::Monomial => f.q() as usize,
            Family::Hyperelliptic { g, .. } => {
                let odd_n = self.n().unwrap_or(0) % 2 == 1;
                let total: i64 = f
                    .elements()
                    .skip(1)
                    .map(|x| {
                        let mut c = f.legendre(g.eval(x)).expect("odd characteristic") as i64;
                        if odd_n {
                            c *= f.legendre(x).expect("odd characteristic") as i64;
                        }
                        1 + c
                    })
                    .sum();
                total as usize
            }
        }
    }

    /// Tangent line at an affine point.
    pub fn tangent_line_at(&self, p: Point) -> Result<Line> {
        if p == self.plane.vertical_infinite_point() {
            return Err(Error::SingularPoint);
        }
        let (x0, y0) = p.affine().ok_or(Error::NotOnCurve)?;
        if !self.equation(x0, y0).is_zero() {
            return Err(Error::NotOnCurve);
        }
        let f = self.field();
        let (fx, fy) = match &self.family {
            Family::Monomial => {
                let d = f.mul(f.from_int(self.m as i64), f.pow(x0, self.m as u64 - 1));
                (f.neg(d), Elem::ONE)
            }
            Family::Hyperelliptic { g, .. } => {
                let n = self.n().unwrap_or(0) as u64;
                let nn = f.from_int(n as i64);
                let fx = if n == 0 {
                    f.neg(g.derivative().eval(x0))
                } else {
                    f.sub(
                        f.mul(f.mul(nn, f.pow(x0, n - 1)), f.square(y0)),
                        g.derivative().eval(x0),
                    )
                };
                let fy = f.mul(f.add(Elem::ONE, Elem::ONE), f.mul(f.pow(x0, n), y0));
                (fx, fy)
            }
        };
        if fx.is_zero() && fy.is_zero() {
            return Err(Error::SingularPoint);
        }
        let w = f.neg(f.add(f.mul(fx, x0), f.mul(fy, y0)));
        self.plane.line(fx, fy, w)
    }

    /// The univariate polynomial cut out on `l` and the map from its roots to
    /// points. Its roots are the affine intersections.
    fn restriction(&self, l: Line) -> Result<(Poly, usize, LineShape)> {
        let f = self.field();
        let sh = shape(f, l);
        let (s, inf) = match (&self.family, &sh) {
            (_, LineShape::Infinity) => (Poly::one(f), self.m),
            (Family::Monomial, LineShape::Slope(t, c)) => {
                let line = Poly::new(f, vec![*c, *t]);
                (&line - &Poly::monomial(f, Elem::ONE, self.m), 0)
            }
            (Family::Monomial, LineShape::Vertical(x0)) => {
                let s = Poly::linear_root(f, f.pow(*x0, self.m as u64));
                (s, self.m - 1)
            }
            (Family::Hyperelliptic { g, .. }, LineShape::Slope(t, c)) => {
                let n = self.n().unwrap_or(0);
                let line = Poly::new(f, vec![*c, *t]);
                let s = &(&Poly::monomial(f, Elem::ONE, n) * &(&line * &line)) - g;
                let d = s.degree().ok_or(Error::LineIsComponent)?;
                (s, self.m - d)
            }
            (Family::Hyperelliptic { g, .. }, LineShape::Vertical(x0)) => {
                let n = self.n().unwrap_or(0) as u64;
                let s = Poly::new(f, vec![f.neg(g.eval(*x0)), Elem::ZERO, f.pow(*x0, n)]);
                let d = s.degree().ok_or(Error::LineIsComponent)?;
                (s, self.m - d)
            }
        };
        if s.is_zero() {
            return Err(Error::LineIsComponent);
        }
        Ok((s, inf, sh))
    }

    pub fn line_intersection_profile(&self, l: Line) -> Result<IntersectionProfile> {
        let f = self.field();
        let (s, infinity_multiplicity, sh) = self.restriction(l)?;
        let p = f.characteristic() as usize;
        let mut affine = Vec::new();
        let mut inseparable = false;
        for (factor, e) in s.squarefree_factorization()? {
            inseparable |= e % p == 0;
            for (d, part) in factor.distinct_degree_factors()? {
                if d == 1 {
                    for root in part.roots() {
                        let point = match sh {
                            LineShape::Slope(t, c) => self.plane.affine_point(root, f.add(f.mul(t, root), c)),
                            LineShape::Vertical(x0) => self.plane.affine_point(x0, root),
                            LineShape::Infinity => unreachable!("constant restriction"),
                        };
                        affine.push(Meeting {
                            locus: Locus::Rational(point),
                            multiplicity: e,
                        });
                    }
                } else {
                    let clusters = part.degree().unwrap_or(0) / d;
                    for _ in 0..clusters {
                        affine.push(Meeting {
                            locus: Locus::Conjugate { degree: d },
                            multiplicity: e,
                        });
                    }
                }
            }
        }
        let closure: usize = affine.iter().map(Meeting::points).sum();
        Ok(IntersectionProfile {
            affine,
            infinity_multiplicity,
            distinct_closure_points: closure + usize::from(infinity_multiplicity > 0),
            inseparable,
        })
    }

    /// Tangents at affine rational points meeting the curve in fewer than
    /// `m - 1` distinct points, together with `x = x0` at the roots of `g`,
    /// `y = 0` and the line at infinity. Sorted by line index, no repeats.
    pub fn compute_lambda(&self) -> Vec<Line> {
        let threshold = self.m.saturating_sub(1);
        let affine: Vec<Point> = self.rational_points().into_iter().filter(|p| p.is_affine()).collect();
        let mut lines: Vec<Line> = affine
            .par_iter()
            .filter_map(|&p| {
                let t = self.tangent_line_at(p).ok()?;
                let prof = self.line_intersection_profile(t).ok()?;
                (prof.distinct_closure_points < threshold).then_some(t)
            })
            .collect();
        if let Some(g) = self.g() {
            lines.extend(g.roots().into_iter().map(|x0| self.plane.vertical(x0)));
        }
        lines.push(self.plane.slope_line(Elem::ZERO, Elem::ZERO));
        lines.push(self.plane.line_at_infinity());
        lines.sort_by_key(|&l| self.plane.line_index(l));
        lines.dedup();
        lines
    }

    /// `7m^2 + 3m + 2`.
    pub fn lambda_bound(&self) -> usize {
        7 * self.m * self.m + 3 * self.m + 2
    }

    /// Pairs `x0 != x1` solving the two double-tangency equations
    /// `h(x1)^2 x0^(m-r) g(x0) = h(x0)^2 x1^(m-r) g(x1)` and
    /// `2 h(x0) x1 g(x1) = h(x1) ((x1 - x0) h(x0) + 2 x0 g(x0))`.
    pub fn double_tangency_witnesses(&self) -> Result<Vec<(Elem, Elem)>> {
        let (Some(g), Some(h), Some(r)) = (self.g(), self.h(), self.r()) else {
            return Err(Error::InvalidCurve(
                "double tangency needs the hyperelliptic family".into(),
            ));
        };
        let f = self.field();
        let e = (self.m - r) as u64;
        let two = f.from_int(2);
        let xs: Vec<Elem> = f.elements().collect();
        let gv: Vec<Elem> = xs.iter().map(|&x| g.eval(x)).collect();
        let hv: Vec<Elem> = xs.iter().map(|&x| h.eval(x)).collect();
        let pv: Vec<Elem> = xs.iter().map(|&x| f.pow(x, e)).collect();
        let mut out: Vec<(Elem, Elem)> = (0..xs.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let (x0, g0, h0, p0) = (xs[i], gv[i], hv[i], pv[i]);
                let (gv, hv, pv, xs) = (&gv, &hv, &pv, &xs);
                (0..xs.len()).filter(move |&j| j != i).filter_map(move |j| {
                    let (x1, g1, h1, p1) = (xs[j], gv[j], hv[j], pv[j]);
                    let eq5 = f.sub(f.mul(f.mul(f.square(h1), p0), g0), f.mul(f.mul(f.square(h0), p1), g1));
                    if !eq5.is_zero() {
                        return None;
                    }
                    let lhs = f.mul(f.mul(two, h0), f.mul(x1, g1));
                    let inner = f.add(f.mul(f.sub(x1, x0), h0), f.mul(two, f.mul(x0, g0)));
                    (lhs == f.mul(h1, inner)).then_some((x0, x1))
                })
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// `2m(4m - r - 1)`.
    pub fn witness_bound(&self) -> Option<usize> {
        self.r().map(|r| 2 * self.m * (4 * self.m - r - 1))
    }
}

/// A multiplicity-two root of a monomial pencil member over an extension.
#[derive(Clone, Debug)]
pub struct DoubleRootWitness {
    /// Degree of the extension holding the root.
    pub degree: u32,
    pub extension: Field,
    pub t: Elem,
    pub x: Elem,
    /// Multiplicities of `x^m - t x + t a - b` over the closure, non-increasing.
    pub pattern: Vec<usize>,
}

/// For `b != 0, a^m`: a root `x` of `(1-m) x^m + a m x^(m-1) - b` over the
/// smallest extension where one works, with `t = m x^(m-1)`, checked to give
/// `x^m - t x + t a - b` exactly one double root and `m - 2` simple roots.
pub fn monomial_double_root_witness(field: &Field, m: usize, a: Elem, b: Elem) -> Result<DoubleRootWitness> {
    let fail = || Error::NoWitness { m };
    if b.is_zero() || b == field.pow(a, m as u64) {
        return Err(Error::HypothesisFailure("need b != 0 and b != a^m".into()));
    }
    let mi = field.from_int(m as i64);
    let mut c = vec![Elem::ZERO; m + 1];
    c[0] = field.neg(b);
    c[m - 1] = field.mul(a, mi);
    c[m] = field.sub(Elem::ONE, mi);
    let phi = Poly::new(field, c);
    let degrees: Vec<u32> = phi
        .distinct_degree_factors()
        .map_err(|_| fail())?
        .iter()
        .map(|(d, _)| *d as u32)
        .collect();
    for d in degrees {
        if let Some(w) = double_root_in_degree(field, m, a, b, &phi, d)? {
            return Ok(w);
        }
    }
    Err(fail())
}

/// A witness whose root generates `F_{q^d}` over the base, if any.
fn double_root_in_degree(
    field: &Field,
    m: usize,
    a: Elem,
    b: Elem,
    phi: &Poly,
    d: u32,
) -> Result<Option<DoubleRootWitness>> {
    let ext = Field::new(field.characteristic(), field.degree() * d)?;
    let emb = ext.embedding_of(field)?;
    let lift = |p: &Poly| Poly::new(&ext, p.coeffs().iter().map(|&c| emb.map(c)).collect());
    let phi_ext = lift(phi);
    let (ea, eb) = (emb.map(a), emb.map(b));
    let em = ext.from_int(m as i64);
    for x in phi_ext.roots() {
        let t = ext.mul(em, ext.pow(x, m as u64 - 1));
        if t.is_zero() || t == em {
            continue;
        }
        let mut sc = vec![Elem::ZERO; m + 1];
        sc[0] = ext.sub(ext.mul(t, ea), eb);
        sc[1] = ext.neg(t);
        sc[m] = Elem::ONE;
        let s = Poly::new(&ext, sc);
        let mut pattern: Vec<usize> = Vec::new();
        for (factor, e) in s.squarefree_factorization()? {
            pattern.extend(std::iter::repeat_n(e, factor.degree().unwrap_or(0)));
        }
        pattern.sort_unstable_by(|a, b| b.cmp(a));
        let mut want = vec![1; m - 1];
        want[0] = 2;
        if pattern == want && s.eval(x).is_zero() {
            return Ok(Some(DoubleRootWitness {
                degree: d,
                extension: ext.clone(),
                t,
                x,
                pattern,
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    /// `m` odd dividing `q + 1`.
    Odd,
    /// `m` even with `2m | q + 1` or `2m | q - 1 - m`.
    Even,
}

/// The twisted curve `x^(m-r-2) y^2 = xi (x^m + 1)` over `F_{q^2}` with its bounds.
#[derive(Clone, Debug)]
pub struct Twist {
    pub kind: TwistKind,
    pub curve: Curve,
    /// The base `q`; the curve lives over `F_{q^2}`.
    pub q: u64,
    pub xi: Elem,
    /// Upper bound on the points in PG(2,q^2) that the counting argument proves.
    pub certified_bound: i64,
    /// The bound as originally announced for this construction.
    pub stated_bound: i64,
    /// `q^2 - 2 floor(m/2) q + 7m^3 + 3m^2 + 5m + 1`, the announced size of the
    /// resulting complete arc (only guaranteed for huge `q`).
    pub arc_bound: i64,
}

/// Builds the twist over `big`, a field of even degree `F_{q^2}`.
pub fn make_twist(kind: TwistKind, m: usize, big: &Field) -> Result<Twist> {
    let hyp = |s: String| Error::HypothesisFailure(s);
    if !big.degree().is_multiple_of(2) {
        return Err(hyp(format!("F_{big} is not a quadratic extension")));
    }
    let p = big.characteristic();
    let q = p.pow(big.degree() / 2) as i64;
    let mi = m as i64;
    match kind {
        TwistKind::Odd => {
            if m.is_multiple_of(2) {
                return Err(hyp(format!("m = {m} must be odd")));
            }
            if (q + 1) % mi != 0 {
                return Err(hyp(format!("m = {m} must divide q+1 = {}", q + 1)));
            }
        }
        TwistKind::Even => {
            if !m.is_multiple_of(2) {
                return Err(hyp(format!("m = {m} must be even")));
            }
            if (q + 1) % (2 * mi) != 0 && (q - 1 - mi) % (2 * mi) != 0 {
                return Err(hyp(format!("2m = {} divides neither q+1 nor q-1-m", 2 * m)));
            }
        }
    }
    let r = select_r(m, p).map_err(|e| hyp(e.to_string()))?;
    let n = m - r - 2;
    let parity_ok = match kind {
        TwistKind::Odd => n.is_multiple_of(2),
        TwistKind::Even => (n + 1).is_multiple_of(2),
    };
    if !parity_ok {
        return Err(hyp(format!("m-r-2 = {n} has the wrong parity")));
    }
    let xi = big.first_nonsquare()?;
    let mut c = vec![Elem::ZERO; m + 1];
    c[0] = xi;
    c[m] = xi;
    let curve = Curve::hyperelliptic(big, m, r, Poly::new(big, c))?;
    let (certified_bound, stated_bound) = match kind {
        TwistKind::Odd => (q * q - (mi - 1) * q + 3 * mi, q * q - (mi + 1) * q + 3 * mi),
        TwistKind::Even => {
            let b = q * q - mi * q + 3 * mi + 1;
            (b, b)
        }
    };
    let arc_bound = q * q - 2 * (mi / 2) * q + 7 * mi.pow(3) + 3 * mi * mi + 5 * mi + 1;
    Ok(Twist {
        kind,
        curve,
        q: q as u64,
        xi,
        certified_bound,
        stated_bound,
        arc_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn fp(p: u64) -> Field {
        Field::new(p, 1).unwrap()
    }

    /// First squarefree member of the table family at or after `beta`.
    fn table_curve(q: u64, m: usize, r: usize, alpha: i64, beta: i64) -> Curve {
        let f = Field::new(q, 1).unwrap();
        (beta..)
            .map(|b| table_g(&f, m, f.from_int(alpha), f.from_int(b)))
            .find_map(|g| Curve::hyperelliptic(&f, m, r, g).ok())
            .unwrap()
    }

    /// Exhaustive `(x, y)` scan.
    fn brute_affine(c: &Curve) -> Vec<Point> {
        let f = c.field();
        let mut out = Vec::new();
        for x in f.elements() {
            for y in f.elements() {
                if c.equation(x, y).is_zero() {
                    out.push(c.plane().affine_point(x, y));
                }
            }
        }
        out
    }

    #[test]
    fn select_r_examples() {
        assert_eq!(select_r(8, 11).unwrap(), 5);
        assert_eq!(select_r(11, 13).unwrap(), 7);
        assert_eq!(select_r(9, 17).unwrap(), 5);
        assert!(matches!(select_r(8, 7), Err(Error::NoAdmissiblePrime { .. })));
        assert!(matches!(select_r(8, 5), Err(Error::NoAdmissiblePrime { .. })));
    }

    #[test]
    fn validation() {
        let f11 = fp(11);
        let g = Poly::from_ints(&f11, &[3, 2, 2, 0, 0, 0, 0, 0, 1]);
        assert!(g.is_squarefree());
        let c = Curve::hyperelliptic(&f11, 8, 5, g).unwrap();
        assert!(c.validate().is_empty());

        let g0 = Poly::from_ints(&f11, &[0, 2, 2, 0, 0, 0, 0, 0, 1]);
        let v = validate_hyperelliptic(&f11, 8, 5, &g0);
        assert!(v.iter().any(|v| v.condition == "g(0) != 0"));
        assert!(Curve::hyperelliptic(&f11, 8, 5, g0).is_err());

        let v = validate_monomial(&fp(5), 5);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].severity, Severity::Hypothesis);
        assert!(v[0].condition.contains("m(m-1)"));

        // p = 7 divides r + 2 = 7: builds, with a hypothesis violation
        let f49 = Field::new(7, 2).unwrap();
        let c = Curve::hyperelliptic(&f49, 8, 5, table_g(&f49, 8, f49.from_int(1), f49.from_int(3))).unwrap();
        assert!(!c.hypotheses_ok());
        assert!(c.validate().iter().all(|v| v.severity == Severity::Hypothesis));
    }

    #[test]
    fn h_shape() {
        let c = table_curve(13, 8, 5, 1, 2);
        let h = c.h().unwrap();
        assert_eq!(h.degree(), Some(8));
        assert_eq!(h.leading(), c.field().from_int(7));
        assert!(h.gcd(c.g().unwrap()).unwrap().is_one());
    }

    #[test]
    fn monomial_points() {
        let f = fp(11);
        let c = Curve::monomial(&f, 5).unwrap();
        let pts = c.rational_points();
        assert_eq!(pts.len(), 12);
        assert_eq!(*pts.last().unwrap(), c.plane().vertical_infinite_point());
        assert!(pts.iter().all(|&p| c.contains(p)));
    }

    #[test]
    fn points_match_exhaustive_scan() {
        for q in [11, 13, 17, 19, 23] {
            for (alpha, beta) in [(1, 2), (3, 5), (2, 9), (7, 4)] {
                let f = fp(q);
                let g = table_g(&f, 8, f.from_int(alpha), f.from_int(beta));
                if !g.is_squarefree() {
                    continue;
                }
                let c = Curve::hyperelliptic(&f, 8, 5, g).unwrap();
                let brute = brute_affine(&c);
                assert_eq!(c.count_affine(), brute.len());
                let pts = c.rational_points();
                assert_eq!(&pts[..pts.len() - 1], &brute[..]);
            }
        }
        let c = table_curve(13, 11, 7, 1, 2);
        assert_eq!(c.count_affine(), brute_affine(&c).len());
    }

    #[test]
    fn counts_in_hasse_range() {
        for q in [11u64, 13, 17, 19, 23, 29, 31] {
            for (alpha, beta) in [(1, 2), (2, 5), (4, 3)] {
                let f = fp(q);
                let g = table_g(&f, 8, f.from_int(alpha), f.from_int(beta));
                if !g.is_squarefree() {
                    continue;
                }
                let c = Curve::hyperelliptic(&f, 8, 5, g).unwrap();
                let n = c.count_affine() as f64;
                let slack = 2.0 * 4.0 * (q as f64).sqrt() + 9.0;
                assert!((n - (q as f64 + 1.0)).abs() <= slack, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn monomial_tangent_and_profile() {
        let f = fp(11);
        let c = Curve::monomial(&f, 5).unwrap();
        let p = c.plane().affine_point(Elem::ONE, Elem::ONE);
        let t = c.tangent_line_at(p).unwrap();
        assert_eq!(t, c.plane().slope_line(f.from_int(5), f.from_int(-4)));
        let prof = c.line_intersection_profile(t).unwrap();
        assert_eq!(prof.multiplicity_at(p), 2);
        assert_eq!(prof.total(), 5);
        assert_eq!(prof.infinity_multiplicity, 0);
    }

    #[test]
    fn secant_profile() {
        let c = table_curve(13, 8, 5, 1, 2);
        let affine: Vec<Point> = c.rational_points().into_iter().filter(|p| p.is_affine()).collect();
        let (p, q) = (affine[0], affine[1]);
        let l = c.plane().line_through(p, q).unwrap();
        let prof = c.line_intersection_profile(l).unwrap();
        assert!(prof.multiplicity_at(p) >= 1 && prof.multiplicity_at(q) >= 1);
        assert_eq!(prof.total(), 8);
    }

    #[test]
    fn vertical_profiles() {
        let c = table_curve(13, 8, 5, 1, 2);
        let f = c.field().clone();
        for x0 in f.elements().skip(1) {
            let l = c.plane().vertical(x0);
            let prof = c.line_intersection_profile(l).unwrap();
            assert_eq!(prof.total(), 8);
            let ys = c.fiber(x0);
            match ys.len() {
                2 => {
                    assert_eq!(prof.rational_points().len(), 2);
                    assert!(prof.affine.iter().all(|e| e.multiplicity == 1));
                    assert_eq!(prof.infinity_multiplicity, 6);
                }
                1 => assert_eq!(prof.multiplicity_at(c.plane().affine_point(x0, Elem::ZERO)), 2),
                _ => assert_eq!(
                    prof.affine,
                    vec![Meeting {
                        locus: Locus::Conjugate { degree: 2 },
                        multiplicity: 1
                    }]
                ),
            }
        }
        let at0 = c.line_intersection_profile(c.plane().vertical(Elem::ZERO)).unwrap();
        assert_eq!(at0.infinity_multiplicity, 8);
        let inf = c.line_intersection_profile(c.plane().line_at_infinity()).unwrap();
        assert_eq!(inf.infinity_multiplicity, 8);
        assert_eq!(inf.distinct_closure_points, 1);
    }

    #[test]
    fn tangents_have_contact() {
        for (q, m, r) in [(11, 8, 5), (13, 8, 5), (19, 8, 5), (13, 11, 7)] {
            let c = table_curve(q, m, r, 2, 5);
            let f = c.field().clone();
            let n = c.n().unwrap() as u64;
            for p in c.rational_points().into_iter().filter(|p| p.is_affine()) {
                let t = c.tangent_line_at(p).unwrap();
                let prof = c.line_intersection_profile(t).unwrap();
                assert!(prof.multiplicity_at(p) + prof.infinity_multiplicity >= 2);
                assert!(prof.multiplicity_at(p) >= 2);
                assert_eq!(prof.total(), m);
                let (x0, y0) = p.affine().unwrap();
                if y0.is_zero() {
                    assert_eq!(t, c.plane().vertical(x0));
                    continue;
                }
                // the parametric direction must lie on the tangent
                let dx = f.mul(f.from_int(2), f.mul(f.pow(x0, n + 1), y0));
                let dy = c.h().unwrap().eval(x0);
                let q2 = c.plane().point(f.add(x0, dx), f.add(y0, dy), Elem::ONE).unwrap();
                assert!(c.plane().incident(q2, t));
            }
        }
    }

    #[test]
    fn no_affine_singular_points() {
        let c = table_curve(17, 8, 5, 3, 7);
        for p in c.rational_points().into_iter().filter(|p| p.is_affine()) {
            assert!(c.tangent_line_at(p).is_ok());
        }
        assert_eq!(
            c.tangent_line_at(c.plane().affine_point(Elem::ZERO, Elem::ZERO)),
            Err(Error::NotOnCurve)
        );
    }

    /// Bezout over every line of the plane.
    #[test]
    fn bezout_on_all_lines() {
        for c in [table_curve(11, 8, 5, 1, 2), table_curve(13, 11, 7, 3, 1)] {
            for l in c.plane().all_lines() {
                assert_eq!(c.line_intersection_profile(l).unwrap().total(), c.m());
            }
        }
        let c = Curve::monomial(&fp(7), 5).unwrap();
        for l in c.plane().all_lines() {
            assert_eq!(c.line_intersection_profile(l).unwrap().total(), 5);
        }
    }

    /// Classify every line of the plane from its profile, independently of
    /// the tangent construction.
    fn lambda_oracle(c: &Curve) -> Vec<Line> {
        let pl = c.plane();
        let affine: HashSet<Point> = c.rational_points().into_iter().filter(|p| p.is_affine()).collect();
        let roots = c.g().unwrap().roots();
        let mut out = Vec::new();
        for l in pl.all_lines() {
            let prof = c.line_intersection_profile(l).unwrap();
            let tangent_at_rational = prof
                .affine
                .iter()
                .any(|e| matches!(e.locus, Locus::Rational(p) if affine.contains(&p) && e.multiplicity >= 2));
            let special = l == pl.line_at_infinity()
                || l == pl.slope_line(Elem::ZERO, Elem::ZERO)
                || roots.iter().any(|&x0| l == pl.vertical(x0));
            if special || (tangent_at_rational && prof.distinct_closure_points < c.m() - 1) {
                out.push(l);
            }
        }
        out
    }

    #[test]
    fn lambda_matches_line_classification() {
        for (q, alpha, beta) in [(11, 2, 3), (13, 1, 2), (17, 5, 1)] {
            let c = table_curve(q, 8, 5, alpha, beta);
            let lambda = c.compute_lambda();
            assert_eq!(lambda, lambda_oracle(&c));
            assert!(lambda.len() <= c.lambda_bound());
            assert!(lambda.contains(&c.plane().line_at_infinity()));
            assert!(lambda.contains(&c.plane().slope_line(Elem::ZERO, Elem::ZERO)));
        }
    }

    #[test]
    fn witnesses_give_shared_tangents() {
        for (q, alpha, beta) in [(11, 2, 3), (13, 1, 2), (17, 5, 1), (19, 1, 4)] {
            let c = table_curve(q, 8, 5, alpha, beta);
            let f = c.field().clone();
            let (g, h) = (c.g().unwrap(), c.h().unwrap());
            let n = c.n().unwrap() as u64;
            let w = c.double_tangency_witnesses().unwrap();
            assert!(w.len() <= c.witness_bound().unwrap());
            for &(x0, x1) in &w {
                assert_ne!(x0, x1);
                let (g0, h0, g1, h1) = (g.eval(x0), h.eval(x0), g.eval(x1), h.eval(x1));
                if [x0, x1, g0, h0, g1, h1].iter().any(|e| e.is_zero()) {
                    continue;
                }
                let Ok(y0) = f.sqrt(f.div(g0, f.pow(x0, n)).unwrap()) else {
                    continue;
                };
                let num = f.add(f.mul(f.sub(x1, x0), h0), f.mul(f.from_int(2), f.mul(x0, g0)));
                let y1 = f.mul(f.div(num, f.mul(f.from_int(2), f.mul(x0, g0))).unwrap(), y0);
                let (p0, p1) = (c.plane().affine_point(x0, y0), c.plane().affine_point(x1, y1));
                assert!(c.contains(p1));
                assert_eq!(c.tangent_line_at(p0).unwrap(), c.tangent_line_at(p1).unwrap());
            }
        }
    }

    #[test]
    fn double_root_witness_examples() {
        let f = fp(11);
        let w = monomial_double_root_witness(&f, 5, Elem::ZERO, Elem::ONE).unwrap();
        assert_eq!(w.pattern, vec![2, 1, 1, 1]);
        // x^5 = 8 needs an element of order 50
        assert_eq!(w.degree, 5);
        assert!(monomial_double_root_witness(&f, 5, Elem::ONE, Elem::ONE).is_err());
        assert!(monomial_double_root_witness(&f, 5, Elem::ONE, Elem::ZERO).is_err());
        // the rational root x = 1 gives t = m, so the witness lives in F_121
        let w = monomial_double_root_witness(&f, 5, f.elem(6).unwrap(), f.elem(4).unwrap()).unwrap();
        assert_eq!(w.degree, 2);
        assert_ne!(w.t, w.extension.from_int(5));
        assert_eq!(w.pattern, vec![2, 1, 1, 1]);
    }

    #[test]
    fn twist_construction() {
        let big = Field::new(17, 2).unwrap();
        let tw = make_twist(TwistKind::Odd, 9, &big).unwrap();
        assert_eq!(tw.curve.r(), Some(5));
        assert_eq!(tw.curve.n(), Some(2));
        assert_eq!(tw.certified_bound, 180);
        assert_eq!(tw.stated_bound, 146);
        assert!(!big.is_square(tw.xi).unwrap());
        assert!(make_twist(TwistKind::Even, 9, &big).is_err());
        assert!(make_twist(TwistKind::Odd, 7, &big).is_err());
        assert!(make_twist(TwistKind::Odd, 9, &fp(17)).is_err());
    }

    #[test]
    fn genus() {
        assert_eq!(table_curve(11, 8, 5, 1, 2).genus(), 4);
        assert_eq!(table_curve(13, 11, 7, 1, 2).genus(), 5);
    }
}
