//! Arithmetic over `F_q`, `q = p^e <= 2^16`.
//!
//! Elements are canonical integers in `[0, q)`: the base-`p` digits of the
//! representative, least significant first, are the coefficients of the
//! residue polynomial modulo the field's irreducible modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn rep(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `F_q`. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is a function of q, so q identifies the field.
        self.0.q == other.0.q
    }
}

impl Eq for FieldSpec {}

/// Builds `F_q`. For `e > 1` the modulus is the smallest irreducible monic
/// polynomial of degree `e`, ordering the non-leading coefficients as a base-`p`
/// integer (constant term least significant).
pub fn field_make(q: u64) -> Result<FieldSpec> {
    if q > MAX_FIELD_SIZE {
        return Err(Error::TooLarge(q));
    }
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let (p, e, q) = (p as u32, e, q as u32);
    let modulus = if e == 1 { Vec::new() } else { smallest_irreducible(p, e) };
    let mut inner = Inner {
        p,
        e,
        q,
        modulus,
        exp: Vec::new(),
        log: Vec::new(),
    };
    build_log_tables(&mut inner);
    Ok(FieldSpec(Arc::new(inner)))
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let lower = (p as u64).pow(e);
    (0..lower)
        .map(|c| {
            let mut poly = digits(c, p, e as usize);
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
/// Coefficients are listed constant term first.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for c in 0..(p as u64).pow(d as u32) {
            let mut divisor = digits(c, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(num: &[u32], monic: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let d = monic.len() - 1;
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (k, &m) in monic.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - (lead * m) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn build_log_tables(inner: &mut Inner) {
    let q = inner.q as usize;
    let order = q - 1;
    let generator = (1..inner.q)
        .find(|&g| multiplicative_order(inner, g) == order)
        .expect("F_q* is cyclic");
    let mut exp = Vec::with_capacity(order);
    let mut log = vec![0u32; q];
    let mut x = 1u32;
    for k in 0..order {
        exp.push(x);
        log[x as usize] = k as u32;
        x = schoolbook_mul(inner, x, generator);
    }
    inner.exp = exp;
    inner.log = log;
}

fn multiplicative_order(inner: &Inner, g: u32) -> usize {
    let mut x = g;
    let mut k = 1;
    while x != 1 {
        x = schoolbook_mul(inner, x, g);
        k += 1;
        if k > inner.q as usize {
            return 0;
        }
    }
    k
}

fn schoolbook_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    let (p, e) = (inner.p, inner.e as usize);
    if e == 1 {
        return ((a as u64 * b as u64) % p as u64) as u32;
    }
    let da = digits(a as u64, p, e);
    let db = digits(b as u64, p, e);
    let mut prod = vec![0u32; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let r = poly_rem(&prod, &inner.modulus, p);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Coefficients of the modulus, constant term first, including the leading 1.
    /// Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn elem(&self, rep: u32) -> Result<FieldElement> {
        if rep < self.0.q {
            Ok(FieldElement(rep))
        } else {
            Err(Error::InvalidElement { rep, q: self.0.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.0.e == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.e == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.0.exp.len();
        let k = self.0.log[a.0 as usize] as usize + self.0.log[b.0 as usize] as usize;
        FieldElement(self.0.exp[if k >= order { k - order } else { k }])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.0.exp.len();
        let k = self.0.log[a.0 as usize] as usize;
        Ok(FieldElement(self.0.exp[(order - k) % order]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// A generator of `F_q*`.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(*self.0.exp.get(1).unwrap_or(&1))
    }

    /// Reference multiplication by polynomial product and reduction, without tables.
    pub fn mul_schoolbook(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(schoolbook_mul(&self.0, a.0, b.0))
    }

    pub(crate) fn check_same(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.q(),
                right: other.q(),
            })
        }
    }
}
