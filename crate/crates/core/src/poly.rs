//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored lowest degree first with trailing zeros stripped;
//! the zero polynomial has no coefficients. All in-scope degrees are small
//! (at most a few dozen), so every algorithm here is the textbook quadratic one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{prime_divisors, Elem, Field};

/// Root extraction switches from exhaustive evaluation to the gcd route above this `q`.
pub const EXHAUSTIVE_ROOT_LIMIT: u64 = 10_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From integer coefficients (ascending), mapped into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    /// `c x^k`
    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    /// `x - r`
    pub fn linear_root(field: &Field, r: Elem) -> Poly {
        Poly::new(field, vec![field.neg(r), Elem::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// already excluded zero.
    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(f));
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder, `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(rem[k + i], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; panics in debug builds if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Formal derivative; terms whose exponent is divisible by `p` vanish.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.characteristic()) as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    /// Monic gcd by Euclid.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            base = (&base * &base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `gcd(f, f')` is constant. The zero polynomial is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).map(|g| g.is_one()).unwrap_or(false),
        }
    }

    /// Monic product of the distinct irreducible factors. Rejects polynomials
    /// with identically zero derivative.
    pub fn squarefree_part(&self) -> Result<Poly> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d > 0 && self.derivative().is_zero() {
            return Err(Error::InseparableInput);
        }
        let mut out = Poly::one(&self.field);
        for (factor, _) in self.squarefree_factorization()? {
            out = &out * &factor;
        }
        Ok(out)
    }

    /// `f = c * prod g_i^{e_i}` with each `g_i` monic, squarefree, pairwise
    /// coprime, and the `e_i` distinct and ascending. Exact in every
    /// characteristic (multiplicities divisible by `p` are recovered through
    /// `p`-th roots).
    pub fn squarefree_factorization(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut raw = Vec::new();
        sff_into(&self.monic(), 1, &mut raw)?;
        raw.sort_by_key(|(_, e)| *e);
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (g, e) in raw {
            match merged.last_mut() {
                Some((h, last)) if *last == e => *h = &*h * &g,
                _ => merged.push((g, e)),
            }
        }
        Ok(merged)
    }

    /// Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let q = self.field.q();
        let x = Poly::x(&self.field);
        let frob = |k: usize| -> Poly {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.pow_mod(q, &f).expect("nonzero modulus");
            }
            h
        };
        for l in prime_divisors(n as u64) {
            let h = &frob(n / l as usize) - &x;
            if !f.gcd(&h).expect("f nonzero").is_one() {
                return false;
            }
        }
        (&frob(n) - &x).rem(&f).expect("nonzero modulus").is_zero()
    }

    /// Distinct roots in the base field, ascending. Exhaustive evaluation for
    /// `q <= 10^4`, otherwise the gcd route.
    pub fn roots(&self) -> Vec<Elem> {
        if self.field.q() <= EXHAUSTIVE_ROOT_LIMIT {
            self.roots_by_evaluation()
        } else {
            self.roots_by_gcd()
        }
    }

    pub fn roots_by_evaluation(&self) -> Vec<Elem> {
        if self.is_zero() {
            return self.field.elements().collect();
        }
        self.field.elements().filter(|&x| self.eval(x).is_zero()).collect()
    }

    /// Roots of `gcd(f, x^q - x)`, split into linear factors by random-free
    /// equal-degree splitting over deterministic shifts.
    pub fn roots_by_gcd(&self) -> Vec<Elem> {
        if self.is_zero() {
            return self.field.elements().collect();
        }
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let xq = x.pow_mod(self.field.q(), &f).expect("nonzero modulus");
        let g = f.gcd(&(&xq - &x)).expect("f nonzero");
        let mut roots = Vec::with_capacity(g.deg());
        split_linear(&g, &mut roots);
        roots.sort();
        roots
    }

    /// Pairs `(d, e_d)`: `e_d` is the total degree of the irreducible factors of
    /// degree `d`. Requires a squarefree input.
    pub fn distinct_degree_pattern(&self) -> Result<Vec<(usize, usize)>> {
        Ok(self
            .distinct_degree_factors()?
            .into_iter()
            .map(|(d, g)| (d, g.deg()))
            .collect())
    }

    /// `(d, product of all monic irreducible factors of degree d)` for each `d`
    /// that occurs.
    pub fn distinct_degree_factors(&self) -> Result<Vec<(usize, Poly)>> {
        if !self.is_squarefree() {
            return Err(if self.is_zero() {
                Error::ZeroPolynomial
            } else {
                Error::NotSquarefree
            });
        }
        let q = self.field.q();
        let x = Poly::x(&self.field);
        let mut f = self.monic();
        let mut out = Vec::new();
        let mut h = x.rem(&f)?;
        let mut d = 1;
        while f.deg() >= 2 * d {
            h = h.pow_mod(q, &f)?;
            let g = f.gcd(&(&h - &x))?;
            if !g.is_constant() {
                f = f.div_exact(&g)?;
                h = h.rem(&f)?;
                out.push((d, g));
            }
            d += 1;
        }
        if !f.is_constant() {
            out.push((f.deg(), f));
        }
        Ok(out)
    }
}

fn sff_into(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c)?;
        let factor = w.div_exact(&y)?;
        if !factor.is_constant() {
            out.push((factor, i * scale));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_constant() {
        let p = f.field().characteristic() as usize;
        sff_into(&pth_root(&c), scale * p, out)?;
    }
    Ok(())
}

/// For `f` with only exponents divisible by `p`: the `g` with `g^p = f`.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    // c^(1/p) = c^(q/p)
    let root_exp = field.q() / p as u64;
    let coeffs = f.coeffs().iter().step_by(p).map(|&c| field.pow(c, root_exp)).collect();
    Poly::new(field, coeffs)
}

fn split_linear(g: &Poly, roots: &mut Vec<Elem>) {
    let field = g.field();
    match g.deg() {
        0 => return,
        1 => {
            roots.push(field.neg(g.monic().coeff(0)));
            return;
        }
        _ => {}
    }
    let q = field.q();
    let one = Poly::one(field);
    for delta in field.elements() {
        let shifted = Poly::new(field, vec![delta, Elem::ONE]);
        let probe = if field.characteristic() == 2 {
            // trace of delta * x
            let dx = Poly::monomial(field, if delta.is_zero() { Elem::ONE } else { delta }, 1);
            let mut term = dx.rem(g).expect("nonzero");
            let mut acc = term.clone();
            for _ in 1..field.degree() {
                term = (&term * &term).rem(g).expect("nonzero");
                acc = &acc + &term;
            }
            acc
        } else {
            &shifted.pow_mod((q - 1) / 2, g).expect("nonzero") - &one
        };
        if probe.is_zero() {
            continue;
        }
        let h = g.gcd(&probe).expect("g nonzero");
        if !h.is_constant() && h.deg() < g.deg() {
            split_linear(&h, roots);
            split_linear(&g.div_exact(&h).expect("h divides g"), roots);
            return;
        }
    }
    unreachable!("some shift separates two distinct roots");
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = self.field.format_elem(c);
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    /// The comma-separated ascending coefficient list used on the command line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|&c| self.field.format_elem(c)).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Poly {
    /// Parses the ascending coefficient list written by `Display`, e.g.
    /// `"3,2,2,0,0,0,0,0,1"` or `"(1,2),0,(0,1)"` over an extension field.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let mut coeffs = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let text = text.trim();
        for (i, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    coeffs.push(field.parse_elem(&text[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
        }
        coeffs.push(field.parse_elem(&text[start..])?);
        Ok(Poly::new(field, coeffs))
    }
}
