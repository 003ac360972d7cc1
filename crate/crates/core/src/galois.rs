//! Frobenius statistics of the pencil of lines through an external point.
//!
//! For a point `(a, b)` and slope `t`, the line `y = t (x - a) + b` meets the
//! curve where a degree-`m` polynomial vanishes; its factorization pattern is
//! the cycle type of Frobenius in the monodromy group.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::curve::{Curve, Family};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::plane::Point;
use crate::poly::Poly;

/// A partition of `m`, parts in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> CycleType {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn identity(m: usize) -> CycleType {
        CycleType(vec![1; m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Even permutations have an even number of even-length cycles.
    pub fn is_even(&self) -> bool {
        self.0.iter().filter(|&&d| d % 2 == 0).count() % 2 == 0
    }

    pub fn is_transposition(&self) -> bool {
        self.0.first() == Some(&2) && self.0.iter().skip(1).all(|&d| d == 1)
    }

    pub fn is_full_cycle(&self) -> bool {
        self.0.len() == 1
    }

    pub fn has_part(&self, r: usize) -> bool {
        self.0.contains(&r)
    }

    /// Probability that a uniform element of `S_m` has this type:
    /// `1 / prod d^(c_d) c_d!`.
    pub fn sn_probability(&self) -> Ratio<u64> {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for &d in &self.0 {
            *counts.entry(d).or_default() += 1;
        }
        let denom: u64 = counts
            .iter()
            .map(|(&d, &c)| (d as u64).pow(c as u32) * (1..=c).product::<u64>())
            .product();
        Ratio::new(1, denom)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Frobenius {
    Unramified(CycleType),
    /// Repeated roots or a drop in degree.
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationOutcome {
    pub t0: Elem,
    pub kind: Frobenius,
}

/// The pencil polynomial at slope `t0`: `x^m - t0 x + t0 a - b` for the
/// monomial family, `(t0 (x - a) + b)^2 x^n - g(x)` otherwise.
pub fn specialize(curve: &Curve, a: Elem, b: Elem, t0: Elem) -> Poly {
    let f = curve.field();
    let m = curve.m();
    // the line as a polynomial in x
    let line = Poly::new(f, vec![f.sub(b, f.mul(t0, a)), t0]);
    match curve.family() {
        Family::Monomial => &Poly::monomial(f, Elem::ONE, m) - &line,
        Family::Hyperelliptic { g, .. } => {
            let n = curve.n().unwrap_or(0);
            &(&(&line * &line) * &Poly::monomial(f, Elem::ONE, n)) - g
        }
    }
}

/// Cycle type from the distinct-degree pattern of a squarefree degree-`m`
/// polynomial.
pub fn frobenius_cycle_type(f: &Poly, m: usize) -> Frobenius {
    if f.degree() != Some(m) || !f.is_squarefree() {
        return Frobenius::Ramified;
    }
    match f.distinct_degree_pattern() {
        Ok(pattern) => {
            let parts = pattern
                .into_iter()
                .flat_map(|(d, e)| std::iter::repeat_n(d, e / d))
                .collect();
            Frobenius::Unramified(CycleType::new(parts))
        }
        Err(_) => Frobenius::Ramified,
    }
}

fn ensure_off_curve(curve: &Curve, a: Elem, b: Elem) -> Result<Point> {
    let p = curve.plane().affine_point(a, b);
    if curve.contains(p) {
        Err(Error::PointOnCurve)
    } else {
        Ok(p)
    }
}

/// First slope whose line through `(a, b)` meets the curve in `m` distinct
/// rational points.
pub fn totally_split_search(curve: &Curve, a: Elem, b: Elem) -> Result<Elem> {
    ensure_off_curve(curve, a, b)?;
    let m = curve.m();
    curve
        .field()
        .elements()
        .find(|&t| {
            let s = specialize(curve, a, b, t);
            s.degree() == Some(m) && s.roots().len() == m
        })
        .ok_or(Error::NotFound)
}

/// The curve points on `y = t0 (x - a) + b`, from the roots of the pencil
/// polynomial.
pub fn split_points(curve: &Curve, a: Elem, b: Elem, t0: Elem) -> Vec<Point> {
    let f = curve.field();
    specialize(curve, a, b, t0)
        .roots()
        .into_iter()
        .map(|x| curve.plane().affine_point(x, f.add(f.mul(t0, f.sub(x, a)), b)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    pub m: usize,
    pub counts: BTreeMap<CycleType, usize>,
    pub ramified: usize,
}

impl Histogram {
    pub fn unramified(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn total(&self) -> usize {
        self.unramified() + self.ramified
    }

    pub fn count(&self, t: &CycleType) -> usize {
        self.counts.get(t).copied().unwrap_or(0)
    }
}

/// Classifies every slope through `(a, b)`.
pub fn cycle_type_histogram(curve: &Curve, a: Elem, b: Elem) -> Result<Histogram> {
    ensure_off_curve(curve, a, b)?;
    let m = curve.m();
    let slopes: Vec<Elem> = curve.field().elements().collect();
    let kinds: Vec<Frobenius> = slopes
        .par_iter()
        .map(|&t| frobenius_cycle_type(&specialize(curve, a, b, t), m))
        .collect();
    let mut counts = BTreeMap::new();
    let mut ramified = 0;
    for k in kinds {
        match k {
            Frobenius::Unramified(t) => *counts.entry(t).or_default() += 1,
            Frobenius::Ramified => ramified += 1,
        }
    }
    Ok(Histogram { m, counts, ramified })
}

/// Integer partitions of `m`, parts non-increasing.
pub fn partitions(m: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType(cur.clone()));
            return;
        }
        for d in (1..=max.min(rest)).rev() {
            cur.push(d);
            go(rest - d, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// Exact cycle-type distribution of a uniform element of `S_m`.
pub fn sn_cycle_distribution(m: usize) -> BTreeMap<CycleType, Ratio<u64>> {
    partitions(m)
        .into_iter()
        .map(|t| {
            let p = t.sn_probability();
            (t, p)
        })
        .collect()
}

/// Acceptable total-variation distance at field size `q`; none below 100,
/// where the error term dominates.
pub fn tv_tolerance(q: u64) -> Option<f64> {
    match q {
        0..=99 => None,
        100..=999 => Some(0.15),
        _ => Some(0.05),
    }
}

/// Total-variation distance between the unramified frequencies and the
/// `S_m` distribution.
pub fn tv_distance(hist: &Histogram) -> f64 {
    let n = hist.unramified();
    if n == 0 {
        return 1.0;
    }
    let reference = sn_cycle_distribution(hist.m);
    let as_f64 = |r: &Ratio<u64>| *r.numer() as f64 / *r.denom() as f64;
    let mut sum = 0.0;
    for (t, p) in &reference {
        sum += (hist.count(t) as f64 / n as f64 - as_f64(p)).abs();
    }
    // types outside the partitions of m cannot occur, but count them if they do
    for (t, &c) in &hist.counts {
        if !reference.contains_key(t) {
            sum += c as f64 / n as f64;
        }
    }
    sum / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceFlags {
    pub has_transposition: bool,
    pub has_full_cycle: bool,
    /// Some type has a part of length `r`; absent without an `r`.
    pub has_r_cycle: Option<bool>,
    /// Every observed type is even, so the group might lie in `A_m`.
    pub alternating_consistent: bool,
}

pub fn evidence_flags(hist: &Histogram, r: Option<usize>) -> EvidenceFlags {
    let types = || hist.counts.keys();
    EvidenceFlags {
        has_transposition: types().any(CycleType::is_transposition),
        has_full_cycle: types().any(CycleType::is_full_cycle),
        has_r_cycle: r.map(|r| types().any(|t| t.has_part(r))),
        alternating_consistent: types().all(CycleType::is_even),
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// `9 (g_F + g_L + m)^2 (m!)^2`.
pub fn chebotarev_constant(m: usize, genus_f: usize, genus_l: usize) -> BigUint {
    let s = BigUint::from((genus_f + genus_l + m) as u64);
    let fm = factorial(m);
    BigUint::from(9u32) * &s * &s * &fm * &fm
}

/// `9 (1 + m/2 + m)^2 (m!)^2`, evaluated exactly as `9 (3m + 2)^2 (m!)^2 / 4`.
pub fn chebotarev_constant_printed(m: usize) -> BigUint {
    let s = BigUint::from((3 * m + 2) as u64);
    let fm = factorial(m);
    BigUint::from(9u32) * &s * &s * &fm * &fm / BigUint::from(4u32)
}

pub fn genus_hyperelliptic(m: usize) -> usize {
    m / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::table_g;
    use crate::gf::Field;

    fn fp(p: u64) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn hyper(q: u64, alpha: i64, beta: i64) -> Curve {
        let f = fp(q);
        (beta..)
            .map(|b| table_g(&f, 8, f.from_int(alpha), f.from_int(b)))
            .find_map(|g| Curve::hyperelliptic(&f, 8, 5, g).ok())
            .unwrap()
    }

    /// Irreducible factor degrees by trial division with every monic
    /// polynomial of increasing degree.
    fn trial_division_degrees(f: &Poly) -> Vec<usize> {
        let field = f.field().clone();
        let q = field.q();
        let mut rest = f.monic();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap_or(0) > 0 {
            if 2 * d > rest.degree().unwrap() {
                out.push(rest.degree().unwrap());
                break;
            }
            for idx in 0..q.pow(d as u32) {
                let mut c: Vec<Elem> = (0..d).map(|i| field.elem(idx / q.pow(i as u32) % q).unwrap()).collect();
                c.push(Elem::ONE);
                let cand = Poly::new(&field, c);
                while rest.rem(&cand).unwrap().is_zero() {
                    rest = rest.div_exact(&cand).unwrap();
                    out.push(d);
                }
            }
            d += 1;
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    #[test]
    fn cycle_type_examples() {
        let f5 = fp(5);
        let x5x = Poly::from_ints(&f5, &[0, -1, 0, 0, 0, 1]);
        assert_eq!(
            frobenius_cycle_type(&x5x, 5),
            Frobenius::Unramified(CycleType::identity(5))
        );
        let f7 = fp(7);
        let sq = &Poly::from_ints(&f7, &[-1, 1]).pow(2) * &Poly::from_ints(&f7, &[1, 0, 1]);
        assert_eq!(frobenius_cycle_type(&sq, 4), Frobenius::Ramified);
        let f11 = fp(11);
        let quintic = (0..121)
            .map(|c| Poly::from_ints(&f11, &[c % 11, c / 11, 0, 0, 0, 1]))
            .find(|p| p.is_irreducible())
            .unwrap();
        assert_eq!(
            frobenius_cycle_type(&quintic, 5),
            Frobenius::Unramified(CycleType::new(vec![5]))
        );
    }

    #[test]
    fn cycle_types_match_trial_division() {
        for q in [3u64, 5, 7] {
            let f = fp(q);
            for seed in 0..60i64 {
                let deg = 2 + (seed as usize % 7);
                let c: Vec<i64> = (0..=deg as i64)
                    .map(|i| (seed * 7 + i * i * 3 + i) % q as i64)
                    .collect();
                let mut c = c;
                c[deg] = 1;
                let p = Poly::from_ints(&f, &c);
                if let Frobenius::Unramified(t) = frobenius_cycle_type(&p, deg) {
                    assert_eq!(t.parts(), &trial_division_degrees(&p)[..], "{p:?}");
                }
            }
        }
    }

    #[test]
    fn specialize_examples() {
        let f = fp(11);
        let c = Curve::monomial(&f, 5).unwrap();
        assert_eq!(
            specialize(&c, Elem::ZERO, Elem::ZERO, Elem::ZERO),
            Poly::monomial(&f, Elem::ONE, 5)
        );
        // against direct expansion of the equation along the line
        let hc = hyper(13, 2, 3);
        let hf = hc.field().clone();
        for (a, b, t) in [(1, 2, 3), (4, 0, 9), (7, 5, 1)] {
            let (a, b, t) = (hf.from_int(a), hf.from_int(b), hf.from_int(t));
            let s = specialize(&hc, a, b, t);
            assert_eq!(s.degree(), Some(8));
            for x in hf.elements() {
                let y = hf.add(hf.mul(t, hf.sub(x, a)), b);
                assert_eq!(s.eval(x), hc.equation(x, y));
            }
        }
    }

    #[test]
    fn specialization_vanishes_at_intersections() {
        let c = hyper(11, 1, 3);
        let f = c.field().clone();
        let pts = c.rational_points();
        let (p, q) = (pts[0].affine().unwrap(), pts[2].affine().unwrap());
        if p.0 != q.0 {
            let t = f.div(f.sub(q.1, p.1), f.sub(q.0, p.0)).unwrap();
            let s = specialize(&c, p.0, p.1, t);
            assert!(s.eval(p.0).is_zero() && s.eval(q.0).is_zero());
        }
    }

    #[test]
    fn sn_distribution_examples() {
        let d3 = sn_cycle_distribution(3);
        assert_eq!(d3[&CycleType::new(vec![1, 1, 1])], Ratio::new(1, 6));
        assert_eq!(d3[&CycleType::new(vec![2, 1])], Ratio::new(1, 2));
        assert_eq!(d3[&CycleType::new(vec![3])], Ratio::new(1, 3));
        let d2 = sn_cycle_distribution(2);
        assert_eq!(d2.len(), 2);
        assert!(d2.values().all(|&p| p == Ratio::new(1, 2)));
        let d8 = sn_cycle_distribution(8);
        assert_eq!(d8[&CycleType::new(vec![2, 1, 1, 1, 1, 1, 1])], Ratio::new(28, 40320));
        for m in 1..=10 {
            let total: Ratio<u64> = sn_cycle_distribution(m).values().copied().sum();
            assert_eq!(total, Ratio::from_integer(1));
        }
        assert_eq!(partitions(8).len(), 22);
    }

    #[test]
    fn flags() {
        let mut counts = BTreeMap::new();
        counts.insert(CycleType::new(vec![2, 1, 1, 1]), 3);
        let h = Histogram {
            m: 5,
            counts,
            ramified: 0,
        };
        let fl = evidence_flags(&h, None);
        assert!(fl.has_transposition && !fl.alternating_consistent);
        let mut counts = BTreeMap::new();
        counts.insert(CycleType::identity(5), 3);
        let h = Histogram {
            m: 5,
            counts,
            ramified: 0,
        };
        let fl = evidence_flags(&h, Some(3));
        assert_eq!(
            fl,
            EvidenceFlags {
                has_transposition: false,
                has_full_cycle: false,
                has_r_cycle: Some(false),
                alternating_consistent: true,
            }
        );
    }

    #[test]
    fn histogram_mass_and_split_points() {
        let f = fp(101);
        let c = Curve::monomial(&f, 5).unwrap();
        let (a, b) = (Elem::ZERO, Elem::ONE);
        let h = cycle_type_histogram(&c, a, b).unwrap();
        assert_eq!(h.total(), 101);
        let t = totally_split_search(&c, a, b).unwrap();
        let pts = split_points(&c, a, b, t);
        assert_eq!(pts.len(), 5);
        let l = c.plane().slope_line(t, f.sub(b, f.mul(t, a)));
        for p in pts {
            assert!(c.contains(p) && c.plane().incident(p, l));
        }
        assert_eq!(totally_split_search(&c, Elem::ONE, Elem::ONE), Err(Error::PointOnCurve));
    }

    #[test]
    fn hyperelliptic_scan_sees_odd_types() {
        let f = Field::new(11, 2).unwrap();
        let g = (0..)
            .map(|b| table_g(&f, 8, f.elem(13).unwrap(), f.elem(b).unwrap()))
            .find(|g| g.is_squarefree() && !g.coeff(0).is_zero())
            .unwrap();
        let c = Curve::hyperelliptic(&f, 8, 5, g).unwrap();
        let external = f
            .elements()
            .flat_map(|a| f.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| !c.contains(c.plane().affine_point(a, b)));
        let mut seen_transposition = false;
        for (a, b) in external.step_by(11).take(200) {
            let h = cycle_type_histogram(&c, a, b).unwrap();
            assert_eq!(h.total(), 121);
            let fl = evidence_flags(&h, c.r());
            assert!(!fl.alternating_consistent);
            assert!(h.ramified <= 2 * (4 + 8));
            seen_transposition |= fl.has_transposition;
        }
        // a transposition has density 1/1440, so one point rarely shows it
        assert!(seen_transposition);
    }

    #[test]
    fn constants() {
        assert_eq!(chebotarev_constant(8, 0, 4), BigUint::from(2_106_910_310_400u64));
        assert_eq!(
            chebotarev_constant_printed(8),
            BigUint::from(9u64 * 169 * 40320 * 40320)
        );
        assert!((5..12).all(|m| chebotarev_constant(m, 0, m / 2) < chebotarev_constant(m + 1, 0, m.div_ceil(2))));
        assert_eq!(genus_hyperelliptic(8), 4);
        assert_eq!(genus_hyperelliptic(11), 5);
        assert_eq!(genus_hyperelliptic(9), 4);
    }
}
