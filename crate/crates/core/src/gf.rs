//! Finite fields `F_{p^a}`.
//!
//! An element is stored as the integer encoding `c_0 + c_1 p + ... + c_{a-1} p^{a-1}`
//! of its reduced coefficient vector modulo the field's defining polynomial.
//! The encoding is canonical, so equality is coefficient-wise, and ascending
//! integer order is the enumeration order used by every exhaustive scan.
//!
//! Fields with `q <= 2^20` and `a > 1` get discrete log tables; larger
//! extension fields fall back to schoolbook multiplication modulo the
//! defining polynomial.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;

const TABLE_LIMIT: u64 = 1 << 20;

/// An element of some [`Field`], as its canonical encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Position of the element in the field's enumeration order.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    /// `exp[i] = g^i` for `i < 2(q-1)`, so a sum of two logs needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    degree: u32,
    q: u64,
    /// Low coefficients `c_0..c_{a-1}` of the monic defining polynomial.
    modulus: Vec<u64>,
    powers: Vec<u64>,
    tables: Option<LogTables>,
}

/// The finite field `F_q`, `q = p^a`. Cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.degree == other.0.degree && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.degree.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.degree)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.degree)
    }
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors by trial division.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds `F_{p^a}`. The defining polynomial is the first monic irreducible
    /// of degree `a` in ascending order of its encoding `c_0 + c_1 p + ...`
    /// (so `x^2+2` for `F_25`, `x^3+2x+1` for `F_27`); for `a = 1` it is `x`.
    pub fn new(p: u64, a: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("characteristic {p} too large")));
        }
        let q = p
            .checked_pow(a)
            .filter(|&q| q < 1 << 62)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{a} too large")))?;
        if a == 1 {
            return Ok(Field::from_parts(p, 1, vec![0]));
        }
        let base = Field::from_parts(p, 1, vec![0]);
        let count = p.pow(a);
        for enc in 0..count {
            let mut low = Vec::with_capacity(a as usize);
            let mut rest = enc;
            for _ in 0..a {
                low.push(rest % p);
                rest /= p;
            }
            let mut coeffs: Vec<Elem> = low.iter().map(|&c| Elem(c)).collect();
            coeffs.push(Elem::ONE);
            if Poly::new(&base, coeffs).is_irreducible() {
                let field = Field::from_parts(p, a, low);
                debug_assert_eq!(field.q(), q);
                return Ok(field);
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    /// Parses `"p^a"` or a bare prime `"p"`.
    pub fn parse(text: &str) -> Result<Field> {
        let text = text.trim();
        let (p, a) = match text.split_once('^') {
            Some((p, a)) => (p.trim(), a.trim()),
            None => {
                let q: u64 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad field order {text:?}")))?;
                return Field::of_order(q);
            }
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in {text:?}")))?;
        let a: u32 = a
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
        Field::new(p, a)
    }

    /// The field with `q` elements, `q` a prime power.
    pub fn of_order(q: u64) -> Result<Field> {
        let p = prime_divisors(q)
            .first()
            .copied()
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        let mut a = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            a += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        Field::new(p, a)
    }

    fn from_parts(p: u64, degree: u32, modulus: Vec<u64>) -> Field {
        let powers: Vec<u64> = (0..=degree).map(|i| p.pow(i)).collect();
        let q = powers[degree as usize];
        let mut inner = Inner {
            p,
            degree,
            q,
            modulus,
            powers,
            tables: None,
        };
        if degree > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Field(Arc::new(inner))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Coefficients of the monic defining polynomial, ascending, leading 1 included.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.0.modulus.clone();
        m.push(1);
        m
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u64)
    }

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.0.q {
            Ok(Elem(index))
        } else {
            Err(Error::ElementOutOfRange(index))
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.0.q
    }

    /// All `q` elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        let mut rest = x.0;
        (0..self.0.degree)
            .map(|_| {
                let d = rest % self.0.p;
                rest /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.0.degree as usize {
            return Err(Error::Parse(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.0.degree
            )));
        }
        let mut enc = 0;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.0.p {
                return Err(Error::Parse(format!("coefficient {c} not reduced mod {}", self.0.p)));
            }
            enc += c * self.0.powers[i];
        }
        Ok(Elem(enc))
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let p = self.0.p;
        if self.0.degree == 1 {
            let s = x.0 + y.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut a, mut b, mut out) = (x.0, y.0, 0);
        for &w in &self.0.powers[..self.0.degree as usize] {
            let s = (a % p + b % p) % p;
            out += s * w;
            a /= p;
            b /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        let p = self.0.p;
        if self.0.degree == 1 {
            return Elem(if x.0 == 0 { 0 } else { p - x.0 });
        }
        let (mut a, mut out) = (x.0, 0);
        for &w in &self.0.powers[..self.0.degree as usize] {
            out += ((p - a % p) % p) * w;
            a /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if self.0.degree == 1 {
            return Elem(x.0 * y.0 % self.0.p);
        }
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        match &self.0.tables {
            Some(t) => Elem(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize] as u64),
            None => self.mul_schoolbook(x, y),
        }
    }

    /// Multiplication by polynomial product and reduction, never using log
    /// tables. Exposed so table-driven products can be checked against it.
    pub fn mul_schoolbook(&self, x: Elem, y: Elem) -> Elem {
        Elem(mul_reduce(&self.0, x.0, y.0))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let n = (self.0.q - 1) as u32;
            let l = t.log[x.0 as usize];
            return Ok(Elem(t.exp[((n - l) % n) as usize] as u64));
        }
        Ok(self.pow(x, self.0.q - 2))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut base = x;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    /// `x = 0` or `x^((q-1)/2) = 1`.
    pub fn is_square(&self, x: Elem) -> Result<bool> {
        if self.0.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(x.is_zero() || self.pow(x, (self.0.q - 1) / 2) == Elem::ONE)
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn legendre(&self, x: Elem) -> Result<i8> {
        if x.is_zero() {
            return Ok(0);
        }
        Ok(if self.is_square(x)? { 1 } else { -1 })
    }

    /// Square root, choosing the smaller encoding of `{y, -y}`.
    pub fn sqrt(&self, x: Elem) -> Result<Elem> {
        if !self.is_square(x)? {
            return Err(Error::NoRoot);
        }
        if x.is_zero() {
            return Ok(x);
        }
        let q = self.0.q;
        let y = if q % 4 == 3 {
            self.pow(x, (q + 1) / 4)
        } else {
            self.tonelli_shanks(x)
        };
        debug_assert_eq!(self.square(y), x);
        Ok(y.min(self.neg(y)))
    }

    fn tonelli_shanks(&self, n: Elem) -> Elem {
        let q = self.0.q;
        let mut s = 0u32;
        let mut t = q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = self
            .elements()
            .find(|&z| !z.is_zero() && self.pow(z, (q - 1) / 2) != Elem::ONE)
            .expect("odd field has a nonsquare");
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut tt = self.pow(n, t);
        let mut r = self.pow(n, t.div_ceil(2));
        while tt != Elem::ONE {
            let mut i = 0;
            let mut probe = tt;
            while probe != Elem::ONE {
                probe = self.square(probe);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(b);
            }
            r = self.mul(r, b);
            c = self.square(b);
            tt = self.mul(tt, c);
            m = i;
        }
        r
    }

    /// First nonsquare in enumeration order.
    pub fn first_nonsquare(&self) -> Result<Elem> {
        for x in self.elements().skip(1) {
            if !self.is_square(x)? {
                return Ok(x);
            }
        }
        unreachable!("odd field has a nonsquare")
    }

    /// Text form of an element: the integer for prime fields, the coefficient
    /// tuple `(c0,c1,...)` otherwise.
    pub fn format_elem(&self, x: Elem) -> String {
        if self.0.degree == 1 {
            return x.0.to_string();
        }
        let parts: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Inverse of [`Field::format_elem`]. A bare integer below `p` is also
    /// accepted in extension fields as an element of the prime subfield.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad element {text:?}")))?;
            return self.from_coeffs(&coeffs);
        }
        let n: i64 = text
            .parse()
            .map_err(|_| Error::Parse(format!("bad element {text:?}")))?;
        if n < 0 || n as u64 >= self.0.p {
            return Err(Error::Parse(format!("element {n} not reduced mod {}", self.0.p)));
        }
        Ok(Elem(n as u64))
    }

    /// Embedding of a subfield `sub` (same characteristic, degree dividing
    /// ours): sends the generator of `sub` to the first root of its defining
    /// polynomial in `self`.
    pub fn embedding_of(&self, sub: &Field) -> Result<Embedding> {
        if sub.characteristic() != self.characteristic() || !self.degree().is_multiple_of(sub.degree()) {
            return Err(Error::FieldMismatch);
        }
        let modulus: Vec<Elem> = sub.modulus().into_iter().map(Elem).collect();
        let lifted = Poly::new(self, modulus);
        let root = *lifted
            .roots()
            .first()
            .expect("defining polynomial of a subfield splits");
        let mut basis = Vec::with_capacity(sub.degree() as usize);
        let mut power = Elem::ONE;
        for _ in 0..sub.degree() {
            basis.push(power);
            power = self.mul(power, root);
        }
        Ok(Embedding {
            sub: sub.clone(),
            target: self.clone(),
            basis,
        })
    }
}

/// A field homomorphism `sub -> target`.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: Field,
    target: Field,
    basis: Vec<Elem>,
}

impl Embedding {
    pub fn map(&self, x: Elem) -> Elem {
        self.sub
            .coeffs(x)
            .iter()
            .zip(&self.basis)
            .fold(Elem::ZERO, |acc, (&c, &b)| {
                self.target.add(acc, self.target.mul(Elem(c), b))
            })
    }

    pub fn target(&self) -> &Field {
        &self.target
    }
}

fn mul_reduce(f: &Inner, x: u64, y: u64) -> u64 {
    let (p, a) = (f.p, f.degree as usize);
    let digits = |mut v: u64| {
        let mut d = vec![0u64; a];
        for slot in d.iter_mut() {
            *slot = v % p;
            v /= p;
        }
        d
    };
    let (dx, dy) = (digits(x), digits(y));
    let mut prod = vec![0u64; 2 * a - 1];
    for (i, &u) in dx.iter().enumerate() {
        if u == 0 {
            continue;
        }
        for (j, &v) in dy.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u * v) % p;
        }
    }
    // x^a = -(c_0 + ... + c_{a-1} x^{a-1})
    for k in (a..prod.len()).rev() {
        let top = prod[k];
        if top == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &c) in f.modulus.iter().enumerate() {
            prod[k - a + i] = (prod[k - a + i] + (p - c) % p * top) % p;
        }
    }
    prod[..a].iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn build_tables(f: &Inner) -> LogTables {
    let n = f.q - 1;
    let divisors = prime_divisors(n);
    let pow = |x: u64, mut e: u64| {
        let (mut base, mut acc) = (x, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_reduce(f, acc, base);
            }
            base = mul_reduce(f, base, base);
            e >>= 1;
        }
        acc
    };
    let generator = (2..f.q)
        .find(|&g| divisors.iter().all(|&l| pow(g, n / l) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; f.q as usize];
    let mut cur = 1u64;
    for i in 0..n as usize {
        exp[i] = cur as u32;
        exp[i + n as usize] = cur as u32;
        log[cur as usize] = i as u32;
        cur = mul_reduce(f, cur, generator);
    }
    LogTables { exp, log }
}
