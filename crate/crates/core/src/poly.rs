//! Dense univariate polynomials over a [`FieldDescriptor`], with the gcd
//! machinery the rest of the crate relies on: square-free decomposition and
//! roots inside the base field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::Result;
use crate::field::{FieldDescriptor, FieldKind, FieldValue};

/// Coefficients stored low degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldDescriptor,
    coeffs: Vec<FieldValue>,
}

impl Poly {
    pub fn new(field: &FieldDescriptor, mut coeffs: Vec<FieldValue>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(FieldValue::is_zero) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldDescriptor) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldValue) -> Self {
        let field = c.field().clone();
        Poly::new(&field, vec![c])
    }

    /// `x - r`
    pub fn linear(root: &FieldValue) -> Self {
        let field = root.field().clone();
        Poly::new(&field, vec![-root, field.one()])
    }

    pub fn x(field: &FieldDescriptor) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldValue] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldValue {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldValue> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &FieldValue) -> FieldValue {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * self.field.from_i64(i as i64))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldValue) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide through by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.invert().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "polynomial division by zero");
        if self.coeffs.len() < dlen {
            return (Poly::zero(&self.field), self.clone());
        }
        let inv = divisor.coeffs[dlen - 1].invert().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let factor = &rem[i + dlen - 1] * &inv;
            if factor.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&factor * dc);
            }
            quot[i] = factor;
        }
        rem.truncate(dlen - 1);
        (Poly::new(&self.field, quot), Poly::new(&self.field, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; debug-asserts the remainder vanishes.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(&self.field), |acc, _| &acc * self)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u128, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (&acc * &base).rem(modulus);
            }
            base = (&base * &base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// `self(x + shift)`.
    pub fn shift(&self, shift: &FieldValue) -> Poly {
        let lin = Poly::new(&self.field, vec![shift.clone(), self.field.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.field), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    /// For `f = g(x^p)` in characteristic `p`, the polynomial whose `p`-th
    /// power is `f`.
    fn pth_root(&self) -> Poly {
        let p = self.field.characteristic() as usize;
        debug_assert!(p > 0);
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(FieldValue::frobenius_root)
            .collect();
        Poly::new(&self.field, coeffs)
    }

    /// Apply `g` to every coefficient, landing in `field`.
    pub fn map_coeffs(&self, field: &FieldDescriptor, g: impl Fn(&FieldValue) -> FieldValue) -> Poly {
        Poly::new(field, self.coeffs.iter().map(g).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(&self.field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(&self.field, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Renders as `x^4 - 8x^3 - 8x - 8`. Negative rational coefficients become
/// subtractions; non-integer coefficients are parenthesised.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c
                .in_base()
                .and_then(|b| b.as_rational().map(|q| q.is_negative()))
                .unwrap_or(false);
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let text = mag.to_string();
            let simple = text.chars().all(|ch| ch.is_ascii_digit());
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{text}")?,
                (_, true) => {}
                _ if simple => write!(f, "{text}")?,
                _ => write!(f, "({text})")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.field)
    }
}

/// Square-free decomposition of a nonzero polynomial: pairwise coprime monic
/// square-free factors `f_i` with `monic(f) = ∏ f_i^{m_i}`. Handles `p`-th
/// powers in characteristic `p`.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "square-free decomposition of zero");
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    if c.is_zero() {
        c = f.clone();
    }
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let factor = w.exact_div(&y);
        if factor.degree() != Some(0) {
            out.push((factor, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if c.degree() != Some(0) {
        let p = f.field().characteristic() as u32;
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out.sort_by_key(|(g, m)| (*m, g.degree()));
    out
}

/// Distinct roots lying in the coefficient field, with multiplicities,
/// sorted by the field's canonical order.
pub fn roots_in_field(f: &Poly) -> Result<Vec<(FieldValue, u32)>> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut roots = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for r in squarefree_roots(&g)? {
            roots.push((r, m));
        }
    }
    roots.sort();
    Ok(roots)
}

fn squarefree_roots(g: &Poly) -> Result<Vec<FieldValue>> {
    match g.degree() {
        Some(0) | None => return Ok(Vec::new()),
        Some(1) => return Ok(vec![-&g.coeff(0) / &g.coeff(1)]),
        _ => {}
    }
    let field = g.field().clone();
    match field.kind() {
        FieldKind::Prime(_) => Ok(finite_field_roots(g)),
        FieldKind::QuadraticExtension { base, .. } if base.is_finite() => Ok(finite_field_roots(g)),
        FieldKind::Rationals => Ok(rational_roots(g)),
        FieldKind::QuadraticExtension { .. } => Ok(quadratic_field_roots(g)),
    }
}

/// Cantor–Zassenhaus equal-degree splitting of the linear part of `g`, with
/// the splitting shifts taken in enumeration order so output is reproducible.
fn finite_field_roots(g: &Poly) -> Vec<FieldValue> {
    let field = g.field().clone();
    let q = field.order().expect("finite field");
    let x = Poly::x(&field);
    let g = g.monic();
    let frob = x.pow_mod(q, &g);
    let linear_part = g.gcd(&(&frob - &x));
    let mut out = Vec::new();
    split_linear(&linear_part, q, &mut out);
    out.sort();
    out
}

fn split_linear(h: &Poly, q: u128, out: &mut Vec<FieldValue>) {
    match h.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(-&h.coeff(0) / &h.coeff(1));
            return;
        }
        _ => {}
    }
    let field = h.field().clone();
    let n = h.degree().unwrap();
    let one = Poly::one(&field);
    for i in 0..q {
        let delta = field.nth_element(i).expect("finite field");
        let lin = Poly::new(&field, vec![delta, field.one()]);
        let w = &lin.pow_mod((q - 1) / 2, h) - &one;
        let d = h.gcd(&w);
        if let Some(k) = d.degree() {
            if k > 0 && k < n {
                split_linear(&d, q, out);
                split_linear(&h.exact_div(&d), q, out);
                return;
            }
        }
    }
    unreachable!("a squarefree split polynomial always separates");
}

/// Rational roots: rescale to a monic integer polynomial, whose rational
/// roots are integers, then locate those integers exactly.
fn rational_roots(g: &Poly) -> Vec<FieldValue> {
    let field = g.field().clone();
    let g = g.monic();
    let n = g.degree().unwrap();
    let mut lcm = BigInt::one();
    for c in g.coeffs() {
        lcm = lcm.lcm(c.as_rational().expect("rational").denom());
    }
    // h(y) = lcm^n g(y / lcm)
    let ints: Vec<BigInt> = (0..=n)
        .map(|k| {
            let scaled = c_times_pow(g.coeffs()[k].as_rational().unwrap(), &lcm, n - k);
            assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    let mut out: Vec<FieldValue> = integer_roots(&ints)
        .into_iter()
        .map(|r| field.from_ratio(&r, &lcm).expect("nonzero denominator"))
        .collect();
    out.sort();
    out
}

fn c_times_pow(c: &num::BigRational, base: &BigInt, exp: usize) -> num::BigRational {
    let mut factor = BigInt::one();
    for _ in 0..exp {
        factor *= base;
    }
    c * num::BigRational::from_integer(factor)
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn deriv_int(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Integer roots of an integer polynomial (low degree first, nonzero leading
/// coefficient).
pub(crate) fn integer_roots(p: &[BigInt]) -> Vec<BigInt> {
    let mut cands: Vec<BigInt> = real_root_brackets(p)
        .into_iter()
        .flat_map(|(lo, hi)| [lo, hi])
        .filter(|c| eval_int(p, c).is_zero())
        .collect();
    cands.sort();
    cands.dedup();
    cands
}

/// Integer brackets `[lo, hi]`, `hi - lo ≤ 1`, jointly covering every real
/// root. Recurses on the derivative: between consecutive critical brackets
/// the polynomial is monotone and a sign change is bisected down.
fn real_root_brackets(p: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        let (fl, ce) = floor_ceil(&-p[0].clone(), &p[1]);
        return vec![(fl, ce)];
    }
    let lead = p[n].abs();
    let bound = BigInt::one() + p.iter().map(|c| c.abs()).max().unwrap() / &lead + BigInt::one();
    let mut breaks = vec![-bound.clone(), bound.clone()];
    for (lo, hi) in real_root_brackets(&deriv_int(p)) {
        for b in [lo, hi] {
            if b > -bound.clone() && b < bound {
                breaks.push(b);
            }
        }
    }
    breaks.sort();
    breaks.dedup();
    let mut out = Vec::new();
    for pair in breaks.windows(2) {
        let (l, r) = (&pair[0], &pair[1]);
        if r - l <= BigInt::one() {
            out.push((l.clone(), r.clone()));
            continue;
        }
        let (sl, sr) = (eval_int(p, l).signum(), eval_int(p, r).signum());
        if sl.is_zero() {
            out.push((l.clone(), l.clone()));
        }
        if sr.is_zero() {
            out.push((r.clone(), r.clone()));
        }
        if !sl.is_zero() && !sr.is_zero() && sl != sr {
            let (mut lo, mut hi) = (l.clone(), r.clone());
            while &hi - &lo > BigInt::one() {
                let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
                let sm = eval_int(p, &mid).signum();
                if sm.is_zero() {
                    lo = mid.clone();
                    hi = mid;
                    break;
                }
                if sm == sl {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push((lo, hi));
        }
    }
    out
}

fn floor_ceil(n: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let fl = n.div_floor(d);
    let ce = if (&fl * d) == *n { fl.clone() } else { &fl + 1 };
    (fl, ce)
}

/// Roots in `Q(√d)`. Writing `g(u + v√d) = A(u, v) + B(u, v)√d`, a root has
/// rational `(u, v)` with `A = B = 0`. The resultant `Res_u(A, B)` is a
/// polynomial in `v` of degree ≤ deg(g)^2, recovered exactly by
/// interpolation; its rational roots fix `v`, and `gcd(A, B)` then fixes `u`.
fn quadratic_field_roots(g: &Poly) -> Vec<FieldValue> {
    let field = g.field().clone();
    let base = field.base().expect("extension").clone();
    let root = field.adjoined_root().unwrap();
    let g = g.monic();
    let n = g.degree().unwrap();

    let split_at = |v: &FieldValue| -> (Poly, Poly) {
        let shifted = g.shift(&(&field.embed(v).unwrap() * &root));
        let a = shifted.map_coeffs(&base, |c| c.coordinates().unwrap().0.clone());
        let b = shifted.map_coeffs(&base, |c| c.coordinates().unwrap().1.clone());
        (a, b)
    };

    let samples: Vec<(FieldValue, FieldValue)> = (0..=(n * n) as i64)
        .map(|j| {
            let v = base.from_i64(j);
            let (a, b) = split_at(&v);
            let r = resultant_monic(&a, &b);
            (v, r)
        })
        .collect();
    let res = interpolate(&base, &samples);
    if res.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (v, _) in roots_in_field(&res).expect("rational roots") {
        let (a, b) = split_at(&v);
        let common = if b.is_zero() { a.monic() } else { a.gcd(&b) };
        if common.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (u, _) in roots_in_field(&common).expect("rational roots") {
            let x = field.quadratic_element(&u, &v).unwrap();
            if g.eval(&x).is_zero() && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// `Res(a, b)` for monic `a`: the determinant of multiplication by `b` on
/// `K[u]/(a)`.
fn resultant_monic(a: &Poly, b: &Poly) -> FieldValue {
    let field = a.field().clone();
    let n = a.degree().unwrap();
    if n == 0 {
        return field.one();
    }
    let x = Poly::x(&field);
    let mut basis = Poly::one(&field);
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let col = (&basis * b).rem(a);
        rows.push((0..n).map(|i| col.coeff(i)).collect::<Vec<_>>());
        basis = (&basis * &x).rem(a);
    }
    determinant(&field, rows)
}

pub(crate) fn determinant(field: &FieldDescriptor, mut m: Vec<Vec<FieldValue>>) -> FieldValue {
    let n = m.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return field.zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let inv = m[col][col].invert().unwrap();
        det = &det * &m[col][col];
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let factor = &row[col] * &inv;
            if factor.is_zero() {
                continue;
            }
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                let sub = &factor * pv;
                row[c] = &row[c] - &sub;
            }
        }
    }
    det
}

/// Lagrange interpolation through distinct abscissae.
pub(crate) fn interpolate(field: &FieldDescriptor, points: &[(FieldValue, FieldValue)]) -> Poly {
    let mut acc = Poly::zero(field);
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one(field);
        let mut denom = field.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear(xj);
                denom = &denom * &(xi - xj);
            }
        }
        acc = &acc + &basis.scale(&(yi / &denom));
    }
    acc
}
