//! Degree-4 Galois extensions with abelian group, written in a basis where
//! the group acts diagonally, and minimal polynomials as Galois orbit
//! products.
//!
//! Two families are supported: biquadratic `K(sqrt A, sqrt B)` with group
//! `Z/2 x Z/2`, and cyclic `K(k^(1/4))` with group `Z/4`, the latter only over
//! a base containing a square root of `-1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};
use crate::poly::{roots_in_field, Poly};
use crate::quartic::MonicQuartic;

/// Coordinates `(a, b, c, d)` on the extension's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionElement(pub [FieldValue; 4]);

impl ExtensionElement {
    pub fn from_i64(base: &FieldDescriptor, c: [i64; 4]) -> Self {
        ExtensionElement(c.map(|n| base.from_i64(n)))
    }

    /// Parse `a,b,c,d`.
    pub fn parse(base: &FieldDescriptor, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(crate::FieldError::parse(s, "expected four comma-separated coordinates").into());
        }
        let mut out = Vec::with_capacity(4);
        for p in parts {
            out.push(base.parse_value(p)?);
        }
        Ok(ExtensionElement(out.try_into().expect("four coordinates")))
    }

    pub fn zero(base: &FieldDescriptor) -> Self {
        ExtensionElement(std::array::from_fn(|_| base.zero()))
    }

    pub fn constant(c: FieldValue) -> Self {
        let z = c.field().zero();
        ExtensionElement([c, z.clone(), z.clone(), z])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldValue::is_zero)
    }

    /// The base-field value when all non-constant coordinates vanish.
    pub fn in_base(&self) -> Option<&FieldValue> {
        self.0[1..].iter().all(FieldValue::is_zero).then_some(&self.0[0])
    }

    fn sub(&self, other: &Self) -> Self {
        ExtensionElement(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    fn scaled(&self, f: [&FieldValue; 4]) -> Self {
        ExtensionElement(std::array::from_fn(|i| &self.0[i] * f[i]))
    }
}

impl fmt::Display for ExtensionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Shared behaviour of the two extension types.
pub trait GaloisQuartic {
    fn base(&self) -> &FieldDescriptor;

    fn mul(&self, x: &ExtensionElement, y: &ExtensionElement) -> ExtensionElement;

    /// Images of `s` under the four group elements, identity first.
    fn galois_orbit(&self, s: &ExtensionElement) -> [ExtensionElement; 4];

    /// `e` of the orbit product, read from the coordinates of `s`.
    fn e_closed_form(&self, s: &ExtensionElement) -> FieldValue;

    /// A primitive element whose minimal polynomial has `e != 0`.
    fn find_good_primitive_element(&self) -> Result<ExtensionElement>;

    fn distinct_conjugates(&self, s: &ExtensionElement) -> usize {
        let orbit = self.galois_orbit(s);
        (0..4).filter(|&i| !orbit[..i].contains(&orbit[i])).count()
    }

    fn is_primitive(&self, s: &ExtensionElement) -> bool {
        self.distinct_conjugates(s) == 4
    }

    /// `prod_g (x - g s)`, with every coefficient checked to lie in the base.
    fn orbit_product(&self, s: &ExtensionElement) -> Result<MonicQuartic> {
        let k = self.base();
        let coeffs = product_of_linears(self, &self.galois_orbit(s), k);
        let mut out = Vec::with_capacity(4);
        for c in &coeffs[..4] {
            let v = c
                .in_base()
                .ok_or_else(|| Error::InvalidExtension(format!("orbit product coefficient {c} is not in the base")))?;
            out.push(v.clone());
        }
        Ok(MonicQuartic {
            d0: out[0].clone(),
            d1: out[1].clone(),
            d2: out[2].clone(),
            d3: out[3].clone(),
        })
    }

    fn minimal_polynomial(&self, s: &ExtensionElement) -> Result<MonicQuartic> {
        let distinct = self.distinct_conjugates(s);
        if distinct != 4 {
            return Err(Error::NotPrimitive { distinct });
        }
        self.orbit_product(s)
    }

    /// No product over a nonempty proper subset of the orbit lies in `K[x]`.
    fn orbit_product_is_irreducible(&self, s: &ExtensionElement) -> bool {
        let orbit = self.galois_orbit(s);
        let k = self.base();
        (1u32..15).all(|mask| {
            let subset: Vec<ExtensionElement> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| orbit[i].clone()).collect();
            !product_of_linears(self, &subset, k).iter().all(|c| c.in_base().is_some())
        })
    }
}

// coefficients of prod (x - r), low degree first, leading one included
fn product_of_linears<G: GaloisQuartic + ?Sized>(g: &G, roots: &[ExtensionElement], k: &FieldDescriptor) -> Vec<ExtensionElement> {
    let mut coeffs = vec![ExtensionElement::constant(k.one())];
    for r in roots {
        let mut next = vec![ExtensionElement::zero(k); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = ExtensionElement(std::array::from_fn(|j| &next[i + 1].0[j] + &c.0[j]));
            next[i] = next[i].sub(&g.mul(r, c));
        }
        coeffs = next;
    }
    coeffs
}

/// `K(alpha, beta)` with `alpha^2 = A`, `beta^2 = B`, basis `1, alpha, beta, alpha beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquadraticExtension {
    base: FieldDescriptor,
    a: FieldValue,
    b: FieldValue,
}

impl BiquadraticExtension {
    /// Requires `A`, `B` and `AB` to be nonsquares in the base.
    pub fn new(a: FieldValue, b: FieldValue) -> Result<Self> {
        let base = a.field().clone();
        base.check(&b)?;
        for (name, v) in [("A", &a), ("B", &b), ("AB", &(&a * &b))] {
            if v.is_zero() || v.is_square() {
                return Err(Error::InvalidExtension(format!("{name} = {v} is a square in {base}")));
            }
        }
        Ok(BiquadraticExtension { base, a, b })
    }

    /// The algebra `K[alpha, beta]/(alpha^2 - A, beta^2 - B)` without the
    /// field conditions; only `A, B != 0` is required.
    pub fn algebra(a: FieldValue, b: FieldValue) -> Result<Self> {
        let base = a.field().clone();
        base.check(&b)?;
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidExtension("A and B must be nonzero".into()));
        }
        Ok(BiquadraticExtension { base, a, b })
    }

    pub fn params(&self) -> (&FieldValue, &FieldValue) {
        (&self.a, &self.b)
    }

    pub fn alpha(&self) -> ExtensionElement {
        ExtensionElement::from_i64(&self.base, [0, 1, 0, 0])
    }

    pub fn beta(&self) -> ExtensionElement {
        ExtensionElement::from_i64(&self.base, [0, 0, 1, 0])
    }
}

impl GaloisQuartic for BiquadraticExtension {
    fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    fn mul(&self, x: &ExtensionElement, y: &ExtensionElement) -> ExtensionElement {
        let [x0, x1, x2, x3] = &x.0;
        let [y0, y1, y2, y3] = &y.0;
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        ExtensionElement([
            x0 * y0 + a * x1 * y1 + b * x2 * y2 + ab * x3 * y3,
            x0 * y1 + x1 * y0 + b * (x2 * y3 + x3 * y2),
            x0 * y2 + x2 * y0 + a * (x1 * y3 + x3 * y1),
            x0 * y3 + x3 * y0 + x1 * y2 + x2 * y1,
        ])
    }

    /// Sign patterns `Id, (1,-1,1,-1), (1,1,-1,-1), (1,-1,-1,1)`.
    fn galois_orbit(&self, s: &ExtensionElement) -> [ExtensionElement; 4] {
        let (p, m) = (self.base.one(), -self.base.one());
        [
            s.clone(),
            s.scaled([&p, &m, &p, &m]),
            s.scaled([&p, &p, &m, &m]),
            s.scaled([&p, &m, &m, &p]),
        ]
    }

    /// `-64 b c d A B`
    fn e_closed_form(&self, s: &ExtensionElement) -> FieldValue {
        let [_, b, c, d] = &s.0;
        self.base.from_i64(-64) * b * c * d * &self.a * &self.b
    }

    fn find_good_primitive_element(&self) -> Result<ExtensionElement> {
        let s = ExtensionElement::from_i64(&self.base, [1, 1, 1, 1]);
        check_witness(self, s)
    }
}

/// `K(alpha)` with `alpha^4 = k`, basis `1, alpha, alpha^2, alpha^3`, over a
/// base containing `i` with `i^2 = -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicQuarticExtension {
    base: FieldDescriptor,
    k: FieldValue,
    i: FieldValue,
}

impl CyclicQuarticExtension {
    /// Requires `sqrt(-1)` in the base and `x^4 - k` irreducible.
    pub fn new(k: FieldValue) -> Result<Self> {
        let base = k.field().clone();
        let i = match (-base.one()).sqrt() {
            Some([r, s]) => r.min(s),
            None => return Err(Error::InvalidExtension(format!("-1 is not a square in {base}"))),
        };
        // with i in the base, x^4 - k is irreducible iff k is not a square
        if k.is_zero() || k.is_square() {
            return Err(Error::InvalidExtension(format!("x^4 - ({k}) is reducible over {base}")));
        }
        if base.is_finite() {
            let f = Poly::new(&base, vec![-&k, base.zero(), base.zero(), base.zero(), base.one()]);
            if !finite_quartic_is_irreducible(&f)? {
                return Err(Error::InvalidExtension(format!("x^4 - ({k}) is reducible over {base}")));
            }
        }
        Ok(CyclicQuarticExtension { base, k, i })
    }

    pub fn k(&self) -> &FieldValue {
        &self.k
    }

    /// The fixed square root of `-1` defining the generator.
    pub fn i(&self) -> &FieldValue {
        &self.i
    }

    /// `32 c k (b^2 + k d^2)`, the closed form with the opposite overall sign.
    pub fn e_closed_form_positive_sign(&self, s: &ExtensionElement) -> FieldValue {
        -self.e_closed_form(s)
    }
}

impl GaloisQuartic for CyclicQuarticExtension {
    fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    fn mul(&self, x: &ExtensionElement, y: &ExtensionElement) -> ExtensionElement {
        let mut out = ExtensionElement::zero(&self.base).0;
        for (i, xi) in x.0.iter().enumerate() {
            for (j, yj) in y.0.iter().enumerate() {
                let t = xi * yj;
                let n = i + j;
                if n < 4 {
                    out[n] = &out[n] + t;
                } else {
                    out[n - 4] = &out[n - 4] + &self.k * t;
                }
            }
        }
        ExtensionElement(out)
    }

    /// Powers of `alpha^j -> i^j alpha^j`.
    fn galois_orbit(&self, s: &ExtensionElement) -> [ExtensionElement; 4] {
        std::array::from_fn(|g| {
            let f: [FieldValue; 4] = std::array::from_fn(|m| self.i.pow((m * g) as u128 % 4));
            s.scaled([&f[0], &f[1], &f[2], &f[3]])
        })
    }

    /// `-32 c k (b^2 + k d^2)`
    fn e_closed_form(&self, s: &ExtensionElement) -> FieldValue {
        let [_, b, c, d] = &s.0;
        self.base.from_i64(-32) * c * &self.k * (b.square() + &self.k * d.square())
    }

    /// `1 + l alpha + alpha^2 + alpha^3` for the least `l >= 1` with `l^2 != -k`.
    fn find_good_primitive_element(&self) -> Result<ExtensionElement> {
        let minus_k = -&self.k;
        let l = (1..)
            .map(|n| self.base.from_i64(n))
            .find(|l| !l.is_zero() && l.square() != minus_k)
            .expect("at most two l satisfy l^2 = -k");
        let one = self.base.one();
        check_witness(self, ExtensionElement([one.clone(), l, one.clone(), one]))
    }
}

fn check_witness<G: GaloisQuartic>(g: &G, s: ExtensionElement) -> Result<ExtensionElement> {
    let m = g.minimal_polynomial(&s)?;
    if m.invariant_e().is_zero() {
        return Err(Error::InvalidExtension(format!("e vanishes on the minimal polynomial of {s}")));
    }
    Ok(s)
}

/// Irreducibility of a quartic over a finite field: no roots and no common
/// factor with `x^(q^2) - x`.
pub fn finite_quartic_is_irreducible(f: &Poly) -> Result<bool> {
    let field = f.field();
    let q = field
        .order()
        .ok_or_else(|| Error::Unsupported(format!("{field} (irreducibility test needs a finite field)")))?;
    if f.degree() != Some(4) {
        return Ok(false);
    }
    if !roots_in_field(f)?.is_empty() {
        return Ok(false);
    }
    let x = Poly::x(field);
    let xq2 = x.pow_mod(q, f).pow_mod(q, f);
    Ok(f.gcd(&(&xq2 - &x)).degree() == Some(0))
}
