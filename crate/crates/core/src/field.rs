//! Exact arithmetic over the base fields used throughout the crate: the
//! rationals, prime fields `F_p` (p odd), and a single quadratic extension
//! `K(√d)` over either of them.
//!
//! A [`FieldValue`] carries its [`FieldDescriptor`], so mixing elements of
//! different fields is detected. The `checked_*` methods report the mismatch
//! as an error; the operator impls treat it as a programming error and panic.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::FieldError;

/// Largest prime accepted for `F_p`; keeps residue products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Fields with more elements than this refuse to enumerate.
pub const MAX_ENUMERABLE: u128 = 1 << 24;

#[derive(Debug)]
enum Kind {
    Rationals,
    Prime(u64),
    Quadratic { base: FieldDescriptor, d: FieldValue },
}

/// Shared handle describing one exact field of characteristic ≠ 2.
#[derive(Clone)]
pub struct FieldDescriptor(Arc<Kind>);

/// Borrowed view of a descriptor, for matching.
#[derive(Debug, Clone, Copy)]
pub enum FieldKind<'a> {
    Rationals,
    Prime(u64),
    QuadraticExtension {
        base: &'a FieldDescriptor,
        d: &'a FieldValue,
    },
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
    Quadratic(Box<(FieldValue, FieldValue)>),
}

/// An element of a [`FieldDescriptor`] in canonical form.
#[derive(Clone)]
pub struct FieldValue {
    field: FieldDescriptor,
    repr: Repr,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut k = 3;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u128, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Tonelli–Shanks; `n` must be a nonzero quadratic residue mod `p`.
fn sqrt_mod(n: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(n, ((p + 1) / 4) as u128, p);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, ((p - 1) / 2) as u128, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q as u128, p);
    let mut t = pow_mod(n, q as u128, p);
    let mut r = pow_mod(n, q.div_ceil(2) as u128, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1u128 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor(Arc::new(Kind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_odd_prime(p) {
            return Err(FieldError::NotAnOddPrime(p));
        }
        Ok(FieldDescriptor(Arc::new(Kind::Prime(p))))
    }

    /// `base(√d)`. `base` must be `q` or `fp:<p>` and `d` a nonsquare in it.
    pub fn quadratic_extension(base: &FieldDescriptor, d: &FieldValue) -> Result<Self, FieldError> {
        if matches!(*base.0, Kind::Quadratic { .. }) {
            return Err(FieldError::NestingTooDeep);
        }
        base.check(d)?;
        if d.is_square() {
            return Err(FieldError::SquareAdjoined {
                base: base.to_string(),
                d: d.to_string(),
            });
        }
        Ok(FieldDescriptor(Arc::new(Kind::Quadratic {
            base: base.clone(),
            d: d.clone(),
        })))
    }

    pub fn kind(&self) -> FieldKind<'_> {
        match &*self.0 {
            Kind::Rationals => FieldKind::Rationals,
            Kind::Prime(p) => FieldKind::Prime(*p),
            Kind::Quadratic { base, d } => FieldKind::QuadraticExtension { base, d },
        }
    }

    /// 0 for the rationals and their extension, `p` otherwise.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Kind::Rationals => 0,
            Kind::Prime(p) => *p,
            Kind::Quadratic { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements, or `None` for infinite fields.
    pub fn order(&self) -> Option<u128> {
        match &*self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(*p as u128),
            Kind::Quadratic { base, .. } => base.order().map(|q| q * q),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// The base of a quadratic extension.
    pub fn base(&self) -> Option<&FieldDescriptor> {
        match &*self.0 {
            Kind::Quadratic { base, .. } => Some(base),
            _ => None,
        }
    }

    pub(crate) fn check(&self, x: &FieldValue) -> Result<(), FieldError> {
        if &x.field == self {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch {
                left: self.to_string(),
                right: x.field.to_string(),
            })
        }
    }

    fn value(&self, repr: Repr) -> FieldValue {
        FieldValue {
            field: self.clone(),
            repr,
        }
    }

    pub fn zero(&self) -> FieldValue {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldValue {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldValue {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldValue {
        match &*self.0 {
            Kind::Rationals => self.value(Repr::Rational(BigRational::from_integer(n.clone()))),
            Kind::Prime(p) => {
                let r = n.mod_floor_u64(*p);
                self.value(Repr::Residue(r))
            }
            Kind::Quadratic { base, .. } => self.embed_unchecked(base.from_bigint(n)),
        }
    }

    /// Image of `n / d`; fails when `d` vanishes in the field.
    pub fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<FieldValue, FieldError> {
        let den = self.from_bigint(d);
        self.from_bigint(n).checked_div(&den)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldValue, FieldError> {
        self.from_ratio(q.numer(), q.denom())
    }

    fn embed_unchecked(&self, u: FieldValue) -> FieldValue {
        let zero = u.field.zero();
        self.value(Repr::Quadratic(Box::new((u, zero))))
    }

    /// `u + v·√d` in a quadratic extension, from base-field coordinates.
    pub fn quadratic_element(&self, u: &FieldValue, v: &FieldValue) -> Result<FieldValue, FieldError> {
        match &*self.0 {
            Kind::Quadratic { base, .. } => {
                base.check(u)?;
                base.check(v)?;
                Ok(self.value(Repr::Quadratic(Box::new((u.clone(), v.clone())))))
            }
            _ => Err(FieldError::NestingTooDeep),
        }
    }

    /// Lift an element of the base field into this extension (identity on
    /// non-extensions when the descriptors agree).
    pub fn embed(&self, u: &FieldValue) -> Result<FieldValue, FieldError> {
        match &*self.0 {
            Kind::Quadratic { base, .. } if &u.field == base => Ok(self.embed_unchecked(u.clone())),
            _ => {
                self.check(u)?;
                Ok(u.clone())
            }
        }
    }

    /// The adjoined root `√d` of a quadratic extension.
    pub fn adjoined_root(&self) -> Option<FieldValue> {
        match &*self.0 {
            Kind::Quadratic { base, .. } => {
                Some(self.value(Repr::Quadratic(Box::new((base.zero(), base.one())))))
            }
            _ => None,
        }
    }

    /// The `i`-th element in the enumeration order of a finite field.
    pub fn nth_element(&self, i: u128) -> Result<FieldValue, FieldError> {
        match &*self.0 {
            Kind::Rationals => Err(FieldError::Infinite(self.to_string())),
            Kind::Prime(p) => Ok(self.value(Repr::Residue((i % *p as u128) as u64))),
            Kind::Quadratic { base, .. } => {
                let q = base.order().ok_or_else(|| FieldError::Infinite(self.to_string()))?;
                let u = base.nth_element(i % q)?;
                let v = base.nth_element((i / q) % q)?;
                Ok(self.value(Repr::Quadratic(Box::new((u, v)))))
            }
        }
    }

    /// Every element exactly once, `u + v·√d` ordered by `(v, u)`.
    pub fn enumerate(&self) -> Result<Vec<FieldValue>, FieldError> {
        let n = self.order().ok_or_else(|| FieldError::Infinite(self.to_string()))?;
        if n > MAX_ENUMERABLE {
            return Err(FieldError::TooLargeToEnumerate(self.to_string()));
        }
        (0..n).map(|i| self.nth_element(i)).collect()
    }

    /// Parse an element in the canonical textual form (see [`FieldValue`]'s
    /// `Display`). Prime fields also accept negative integers and fractions.
    pub fn parse_value(&self, s: &str) -> Result<FieldValue, FieldError> {
        let s = s.trim();
        match &*self.0 {
            Kind::Rationals | Kind::Prime(_) => {
                let q = parse_rational(s)?;
                self.from_rational(&q)
                    .map_err(|_| FieldError::parse(s, format!("denominator vanishes in {self}")))
            }
            Kind::Quadratic { base, .. } => {
                let (u, v) = split_quadratic(s)?;
                let u = match u {
                    Some(u) => base.parse_value(u)?,
                    None => base.zero(),
                };
                let v = match v {
                    Some(v) => base.parse_value(v)?,
                    None => base.zero(),
                };
                self.quadratic_element(&u, &v)
            }
        }
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num::Integer;
        self.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .strip_prefix('+')
        .unwrap_or(n)
        .parse()
        .map_err(|_| FieldError::parse(s, "expected an integer or n/d"))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| FieldError::parse(s, "expected an integer denominator"))?;
    if d.is_zero() {
        return Err(FieldError::parse(s, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Split `u+v*r` style text into its rational and irrational coordinates.
fn split_quadratic(s: &str) -> Result<(Option<&str>, Option<&str>), FieldError> {
    let Some(head) = s.strip_suffix('r') else {
        return Ok((Some(s), None));
    };
    let head = head.strip_suffix('*').unwrap_or(head);
    let bytes = head.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'+' | b'-' | b'/'));
    let (u, v) = match split {
        Some(i) => (Some(&head[..i]), &head[i..]),
        None => (None, head),
    };
    let v = v.strip_prefix('+').unwrap_or(v);
    let v = match v {
        "" => "1",
        "-" => "-1",
        other => other,
    };
    if u.is_some_and(|u| u.trim().is_empty()) {
        return Err(FieldError::parse(s, "empty rational part"));
    }
    Ok((u, Some(v)))
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Kind::Rationals, Kind::Rationals) => true,
            (Kind::Prime(p), Kind::Prime(q)) => p == q,
            (Kind::Quadratic { base: b1, d: d1 }, Kind::Quadratic { base: b2, d: d2 }) => {
                b1 == b2 && d1 == d2
            }
            _ => false,
        }
    }
}

impl Eq for FieldDescriptor {}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Kind::Rationals => write!(f, "q"),
            Kind::Prime(p) => write!(f, "fp:{p}"),
            Kind::Quadratic { base, d } => write!(f, "qext:{base}:{d}"),
        }
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    /// `q`, `fp:<p>` or `qext:<base>:<d>`.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        if s == "q" {
            return Ok(FieldDescriptor::rationals());
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| FieldError::parse(s, "expected fp:<prime>"))?;
            return FieldDescriptor::prime(p);
        }
        if let Some(rest) = s.strip_prefix("qext:") {
            let (base, d) = if let Some(d) = rest.strip_prefix("q:") {
                (FieldDescriptor::rationals(), d)
            } else if let Some(tail) = rest.strip_prefix("fp:") {
                let (p, d) = tail
                    .split_once(':')
                    .ok_or_else(|| FieldError::parse(s, "expected qext:fp:<p>:<d>"))?;
                (format!("fp:{p}").parse::<FieldDescriptor>()?, d)
            } else {
                return Err(FieldError::NestingTooDeep);
            };
            let d = base.parse_value(d)?;
            return FieldDescriptor::quadratic_extension(&base, &d);
        }
        Err(FieldError::parse(s, "expected q, fp:<p> or qext:<base>:<d>"))
    }
}

impl FieldValue {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(r) => *r == 0,
            Repr::Quadratic(uv) => uv.0.is_zero() && uv.1.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue(r) => *r == 1,
            Repr::Quadratic(uv) => uv.0.is_one() && uv.1.is_zero(),
        }
    }

    /// The rational value, for elements of `q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// The residue in `[0, p)`, for elements of `fp:<p>`.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(r) => Some(*r),
            _ => None,
        }
    }

    /// Coordinates `(u, v)` of `u + v·√d`, for extension elements.
    pub fn coordinates(&self) -> Option<(&FieldValue, &FieldValue)> {
        match &self.repr {
            Repr::Quadratic(uv) => Some((&uv.0, &uv.1)),
            _ => None,
        }
    }

    /// The same element viewed in the base field, if it lies there.
    pub fn in_base(&self) -> Option<FieldValue> {
        match &self.repr {
            Repr::Quadratic(uv) if uv.1.is_zero() => Some(uv.0.clone()),
            Repr::Quadratic(_) => None,
            _ => Some(self.clone()),
        }
    }

    fn adjoined_square(&self) -> &FieldValue {
        match self.field.kind() {
            FieldKind::QuadraticExtension { d, .. } => d,
            _ => unreachable!("not an extension element"),
        }
    }

    fn same_field(&self, other: &FieldValue) -> Result<(), FieldError> {
        self.field.check(other)
    }

    pub fn checked_add(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        self.same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub fn checked_sub(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        self.same_field(other)?;
        Ok(self.add_raw(&other.neg_raw()))
    }

    pub fn checked_mul(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        self.same_field(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn checked_div(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        self.same_field(other)?;
        Ok(self.mul_raw(&other.invert()?))
    }

    fn add_raw(&self, other: &FieldValue) -> FieldValue {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Repr::Residue((a + b) % p)
            }
            (Repr::Quadratic(x), Repr::Quadratic(y)) => {
                Repr::Quadratic(Box::new((x.0.add_raw(&y.0), x.1.add_raw(&y.1))))
            }
            _ => unreachable!("descriptor checked"),
        };
        self.field.value(repr)
    }

    fn neg_raw(&self) -> FieldValue {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Residue(a) => {
                let p = self.field.characteristic();
                Repr::Residue((p - a) % p)
            }
            Repr::Quadratic(x) => Repr::Quadratic(Box::new((x.0.neg_raw(), x.1.neg_raw()))),
        };
        self.field.value(repr)
    }

    fn mul_raw(&self, other: &FieldValue) -> FieldValue {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Repr::Residue(a * b % p)
            }
            (Repr::Quadratic(x), Repr::Quadratic(y)) => {
                let d = self.adjoined_square();
                let (u1, v1) = (&x.0, &x.1);
                let (u2, v2) = (&y.0, &y.1);
                let u = u1.mul_raw(u2).add_raw(&d.mul_raw(&v1.mul_raw(v2)));
                let v = u1.mul_raw(v2).add_raw(&u2.mul_raw(v1));
                Repr::Quadratic(Box::new((u, v)))
            }
            _ => unreachable!("descriptor checked"),
        };
        self.field.value(repr)
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<FieldValue, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(a.recip()),
            Repr::Residue(a) => {
                let p = self.field.characteristic();
                Repr::Residue(pow_mod(*a, (p - 2) as u128, p))
            }
            Repr::Quadratic(x) => {
                let d = self.adjoined_square();
                let norm = x.0.mul_raw(&x.0).add_raw(&d.mul_raw(&x.1.mul_raw(&x.1)).neg_raw());
                let inv = norm.invert()?;
                Repr::Quadratic(Box::new((x.0.mul_raw(&inv), x.1.neg_raw().mul_raw(&inv))))
            }
        };
        Ok(self.field.value(repr))
    }

    pub fn square(&self) -> FieldValue {
        self.mul_raw(self)
    }

    pub fn pow(&self, mut exp: u128) -> FieldValue {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// Galois conjugate `u − v·√d`; identity outside extensions.
    pub fn conjugate(&self) -> FieldValue {
        match &self.repr {
            Repr::Quadratic(x) => self
                .field
                .value(Repr::Quadratic(Box::new((x.0.clone(), x.1.neg_raw())))),
            _ => self.clone(),
        }
    }

    /// The unique `p`-th root in characteristic `p` (all supported fields are
    /// perfect). Identity in characteristic 0.
    pub fn frobenius_root(&self) -> FieldValue {
        match (&self.repr, self.field.characteristic()) {
            // Frobenius on F_{p^2} is conjugation, an involution.
            (Repr::Quadratic(_), p) if p > 0 => self.conjugate(),
            _ => self.clone(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Both square roots `{r, −r}` when `self` is a square. No sign is
    /// preferred; for zero both entries are zero.
    pub fn sqrt(&self) -> Option<[FieldValue; 2]> {
        let root = self.sqrt_one()?;
        let neg = root.neg_raw();
        Some([root, neg])
    }

    fn sqrt_one(&self) -> Option<FieldValue> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match &self.repr {
            Repr::Rational(q) => rational_sqrt(q).map(|r| self.field.value(Repr::Rational(r))),
            Repr::Residue(a) => {
                let p = self.field.characteristic();
                if pow_mod(*a, ((p - 1) / 2) as u128, p) != 1 {
                    return None;
                }
                Some(self.field.value(Repr::Residue(sqrt_mod(*a, p))))
            }
            Repr::Quadratic(x) => {
                let (u, v) = (&x.0, &x.1);
                let d = self.adjoined_square();
                let two = u.field.from_i64(2);
                let build = |p: FieldValue, q: FieldValue| self.field.value(Repr::Quadratic(Box::new((p, q))));
                if v.is_zero() {
                    if let Some(r) = u.sqrt_one() {
                        return Some(build(r, u.field.zero()));
                    }
                    let t = u.mul_raw(&d.invert().ok()?);
                    let q = t.sqrt_one()?;
                    return Some(build(u.field.zero(), q));
                }
                // (p + q√d)^2 = u + v√d  ⇔  p^2 + d q^2 = u, 2pq = v.
                let norm = u.square().add_raw(&d.mul_raw(&v.square()).neg_raw());
                let n = norm.sqrt_one()?;
                let half = two.invert().ok()?;
                for cand in [u.add_raw(&n), u.add_raw(&n.neg_raw())] {
                    let p2 = cand.mul_raw(&half);
                    if p2.is_zero() {
                        continue;
                    }
                    if let Some(p) = p2.sqrt_one() {
                        let q = v.mul_raw(&two.mul_raw(&p).invert().ok()?);
                        return Some(build(p, q));
                    }
                }
                None
            }
        }
    }

    fn order_key(&self) -> OrderKey<'_> {
        match &self.repr {
            Repr::Rational(q) => OrderKey::Rational(q),
            Repr::Residue(r) => OrderKey::Residue(*r),
            Repr::Quadratic(x) => OrderKey::Pair(&x.1, &x.0),
        }
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum OrderKey<'a> {
    Rational(&'a BigRational),
    Residue(u64),
    Pair(&'a FieldValue, &'a FieldValue),
}

impl PartialEq for FieldValue {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}

impl Eq for FieldValue {}

impl Hash for FieldValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl PartialOrd for FieldValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic output: numeric for rationals,
/// by residue for `F_p`, lexicographic in `(v, u)` for extensions.
impl Ord for FieldValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key()
            .cmp(&other.order_key())
            .then_with(|| self.field.to_string().cmp(&other.field.to_string()))
    }
}

/// Canonical text: `n` or `n/d` for rationals, the residue for `F_p`, and
/// `u+v*r` (or `u-v*r`) for extension elements with `v ≠ 0`.
impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Residue(r) => write!(f, "{r}"),
            Repr::Quadratic(x) => {
                let (u, v) = (&x.0, &x.1);
                if v.is_zero() {
                    return write!(f, "{u}");
                }
                match v.as_rational() {
                    Some(q) if q.is_negative() => write!(f, "{u}-{}*r", -q),
                    _ => write!(f, "{u}+{v}*r"),
                }
            }
        }
    }
}

impl fmt::Debug for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldValue> for &FieldValue {
            type Output = FieldValue;
            fn $method(self, rhs: &FieldValue) -> FieldValue {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldValue> for FieldValue {
            type Output = FieldValue;
            fn $method(self, rhs: FieldValue) -> FieldValue {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldValue> for FieldValue {
            type Output = FieldValue;
            fn $method(self, rhs: &FieldValue) -> FieldValue {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldValue> for &FieldValue {
            type Output = FieldValue;
            fn $method(self, rhs: FieldValue) -> FieldValue {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        self.neg_raw()
    }
}

impl Neg for FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        self.neg_raw()
    }
}
