//! Monic and homogeneous quartics, the invariants `a(q)` and `e(q)`, and
//! root-multiplicity profiles.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};
use crate::poly::{squarefree_decomposition, Poly};

/// `x^4 + d3 x^3 + d2 x^2 + d1 x + d0`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicQuartic {
    pub d3: FieldValue,
    pub d2: FieldValue,
    pub d1: FieldValue,
    pub d0: FieldValue,
}

impl MonicQuartic {
    pub fn new(d3: FieldValue, d2: FieldValue, d1: FieldValue, d0: FieldValue) -> Result<Self> {
        let k = d3.field();
        k.check(&d2)?;
        k.check(&d1)?;
        k.check(&d0)?;
        Ok(MonicQuartic { d3, d2, d1, d0 })
    }

    pub fn from_i64(field: &FieldDescriptor, d3: i64, d2: i64, d1: i64, d0: i64) -> Self {
        MonicQuartic {
            d3: field.from_i64(d3),
            d2: field.from_i64(d2),
            d1: field.from_i64(d1),
            d0: field.from_i64(d0),
        }
    }

    /// `None` unless `p` is monic of degree exactly 4.
    pub fn from_poly(p: &Poly) -> Option<Self> {
        if p.degree() != Some(4) || !p.coeff(4).is_one() {
            return None;
        }
        Some(MonicQuartic {
            d3: p.coeff(3),
            d2: p.coeff(2),
            d1: p.coeff(1),
            d0: p.coeff(0),
        })
    }

    /// `(x - s)(x - t)(x - u)(x - v)`
    pub fn from_roots(s: &FieldValue, t: &FieldValue, u: &FieldValue, v: &FieldValue) -> Self {
        let p = &(&Poly::linear(s) * &Poly::linear(t)) * &(&Poly::linear(u) * &Poly::linear(v));
        MonicQuartic::from_poly(&p).expect("product of four monic linears")
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.d3.field()
    }

    /// `[d3, d2, d1, d0]`
    pub fn coefficients(&self) -> [&FieldValue; 4] {
        [&self.d3, &self.d2, &self.d1, &self.d0]
    }

    pub fn to_poly(&self) -> Poly {
        let k = self.field();
        Poly::new(
            k,
            vec![self.d0.clone(), self.d1.clone(), self.d2.clone(), self.d3.clone(), k.one()],
        )
    }

    pub fn eval(&self, x: &FieldValue) -> FieldValue {
        self.to_poly().eval(x)
    }

    /// `16 d0 - 4 d2^2 + d2 d3^2 + 2 d1 d3`
    pub fn invariant_a(&self) -> FieldValue {
        let k = self.field();
        k.from_i64(16) * &self.d0 - k.from_i64(4) * self.d2.square()
            + &self.d2 * self.d3.square()
            + k.from_i64(2) * &self.d1 * &self.d3
    }

    /// `8 d1 - 4 d2 d3 + d3^3`
    pub fn invariant_e(&self) -> FieldValue {
        let k = self.field();
        k.from_i64(8) * &self.d1 - k.from_i64(4) * &self.d2 * &self.d3 + self.d3.pow(3)
    }

    /// Coefficients of `q(x + alpha)`.
    pub fn translate(&self, alpha: &FieldValue) -> MonicQuartic {
        MonicQuartic::from_poly(&self.to_poly().shift(alpha)).expect("shift keeps q monic")
    }

    /// Quartic whose roots are those of `q` multiplied by `eps`.
    pub fn rescale_roots(&self, eps: &FieldValue) -> Result<MonicQuartic> {
        if eps.is_zero() {
            return Err(Error::Field(crate::FieldError::DivisionByZero));
        }
        self.field().check(eps)?;
        let e2 = eps.square();
        Ok(MonicQuartic {
            d3: &self.d3 * eps,
            d2: &self.d2 * &e2,
            d1: &self.d1 * &e2 * eps,
            d0: &self.d0 * e2.square(),
        })
    }

    pub fn homogenize(&self) -> HomogeneousQuartic {
        HomogeneousQuartic {
            coeffs: [
                self.field().one(),
                self.d3.clone(),
                self.d2.clone(),
                self.d1.clone(),
                self.d0.clone(),
            ],
        }
    }

    /// `x` is a root of multiplicity exactly one.
    pub fn is_simple_root(&self, x: &FieldValue) -> bool {
        let p = self.to_poly();
        p.eval(x).is_zero() && !p.derivative().eval(x).is_zero()
    }

    pub fn multiplicity_profile(&self) -> RootProfile {
        let mut parts = Vec::new();
        let mut repeated = Vec::new();
        for (g, m) in squarefree_decomposition(&self.to_poly()) {
            let deg = g.degree().unwrap_or(0);
            parts.extend(std::iter::repeat_n(m, deg));
            if m < 2 {
                continue;
            }
            match deg {
                1 => repeated.push(RepeatedRoot::InField {
                    root: -g.coeff(0),
                    multiplicity: m,
                }),
                2 => {
                    // g = x^2 - trace x + norm
                    let trace = -g.coeff(1);
                    let norm = g.coeff(0);
                    let disc = trace.square() - self.field().from_i64(4) * &norm;
                    match disc.sqrt() {
                        Some([r, _]) => {
                            let two = self.field().from_i64(2);
                            let mut roots = [(&trace + &r) / &two, (&trace - &r) / &two];
                            roots.sort();
                            for root in roots {
                                repeated.push(RepeatedRoot::InField { root, multiplicity: m });
                            }
                        }
                        None => repeated.push(RepeatedRoot::ConjugatePair {
                            trace,
                            norm,
                            multiplicity: m,
                        }),
                    }
                }
                _ => unreachable!("a repeated factor of a quartic has degree at most 2"),
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let partition = match parts.as_slice() {
            [1, 1, 1, 1] => Partition::Distinct,
            [2, 1, 1] => Partition::OneDouble,
            [2, 2] => Partition::TwoDoubles,
            [3, 1] => Partition::TripleSingle,
            [4] => Partition::Quadruple,
            other => unreachable!("not a partition of 4: {other:?}"),
        };
        RootProfile { partition, repeated }
    }
}

impl fmt::Display for MonicQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// `-(s+t-u-v)(s-t+u-v)(s-t-u+v)`, which equals `e` of the quartic with
/// roots `s, t, u, v`.
pub fn e_from_roots(s: &FieldValue, t: &FieldValue, u: &FieldValue, v: &FieldValue) -> FieldValue {
    let p1 = s + t - u - v;
    let p2 = s - t + u - v;
    let p3 = s - t - u + v;
    -(p1 * p2 * p3)
}

/// Nonzero quartic form `d4 X^4 + d3 X^3 Z + d2 X^2 Z^2 + d1 X Z^3 + d0 Z^4`,
/// kept in canonical form: the first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousQuartic {
    coeffs: [FieldValue; 5],
}

impl HomogeneousQuartic {
    /// Coefficients ordered `d4, d3, d2, d1, d0`.
    pub fn new(coeffs: [FieldValue; 5]) -> Result<Self> {
        let k = coeffs[0].field().clone();
        for c in &coeffs[1..] {
            k.check(c)?;
        }
        let pivot = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::Homogeneous("all coefficients vanish".into()))?
            .invert()?;
        Ok(HomogeneousQuartic {
            coeffs: coeffs.map(|c| c * &pivot),
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.coeffs[0].field()
    }

    /// Canonical `[d4, d3, d2, d1, d0]`.
    pub fn coefficients(&self) -> &[FieldValue; 5] {
        &self.coeffs
    }

    pub fn d4(&self) -> &FieldValue {
        &self.coeffs[0]
    }

    pub fn d3(&self) -> &FieldValue {
        &self.coeffs[1]
    }

    /// Affine quartic on the `Z != 0` patch; absent when `d4 = 0`.
    pub fn dehomogenize(&self) -> Option<MonicQuartic> {
        if self.coeffs[0].is_zero() {
            return None;
        }
        let inv = self.coeffs[0].invert().ok()?;
        let [_, d3, d2, d1, d0] = &self.coeffs;
        Some(MonicQuartic {
            d3: d3 * &inv,
            d2: d2 * &inv,
            d1: d1 * &inv,
            d0: d0 * &inv,
        })
    }

    pub fn eval(&self, x: &FieldValue, z: &FieldValue) -> FieldValue {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * x.pow(4 - i as u128) * z.pow(i as u128))
            .fold(self.field().zero(), |acc, t| acc + t)
    }
}

impl fmt::Display for HomogeneousQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Multiplicities of the roots over the algebraic closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Partition {
    /// `[1,1,1,1]`
    Distinct,
    /// `[2,1,1]`
    OneDouble,
    /// `[2,2]`
    TwoDoubles,
    /// `[3,1]`
    TripleSingle,
    /// `[4]`
    Quadruple,
}

impl Partition {
    pub const ALL: [Partition; 5] = [
        Partition::Distinct,
        Partition::OneDouble,
        Partition::TwoDoubles,
        Partition::TripleSingle,
        Partition::Quadruple,
    ];

    pub fn parts(self) -> &'static [u32] {
        match self {
            Partition::Distinct => &[1, 1, 1, 1],
            Partition::OneDouble => &[2, 1, 1],
            Partition::TwoDoubles => &[2, 2],
            Partition::TripleSingle => &[3, 1],
            Partition::Quadruple => &[4],
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RepeatedRoot {
    InField { root: FieldValue, multiplicity: u32 },
    /// Two conjugate roots of `x^2 - trace x + norm`, irreducible over the base.
    ConjugatePair {
        trace: FieldValue,
        norm: FieldValue,
        multiplicity: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootProfile {
    pub partition: Partition,
    pub repeated: Vec<RepeatedRoot>,
}

impl RootProfile {
    /// Every repeated root lies in the base field.
    pub fn repeated_roots_rational(&self) -> bool {
        self.repeated.iter().all(|r| matches!(r, RepeatedRoot::InField { .. }))
    }
}

impl fmt::Display for RootProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        for r in &self.repeated {
            match r {
                RepeatedRoot::InField { root, multiplicity } => write!(f, " {root}^{multiplicity}")?,
                RepeatedRoot::ConjugatePair { trace, norm, multiplicity } => {
                    write!(f, " (x^2 - ({trace})x + {norm})^{multiplicity}")?
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    #[test]
    fn invariant_examples() {
        let k = q();
        let x4 = MonicQuartic::from_i64(&k, 0, 0, 0, 0);
        assert!(x4.invariant_a().is_zero());
        let q1 = MonicQuartic::from_i64(&k, -8, 0, -8, -8);
        assert_eq!(q1.invariant_a(), k.zero());
        assert_eq!(q1.invariant_e(), k.from_i64(-576));
        let w = MonicQuartic::from_i64(&k, -6, 11, -6, 0);
        assert_eq!(w.invariant_a(), k.from_i64(-16));
        assert_eq!(w.invariant_e(), k.zero());
        for s in -3..=3 {
            let s = k.from_i64(s);
            assert!(MonicQuartic::from_roots(&s, &s, &s, &s).invariant_e().is_zero());
        }
    }

    #[test]
    fn root_form_examples() {
        let k = q();
        let (s, t) = (k.from_i64(5), k.from_i64(-2));
        assert!(e_from_roots(&s, &s, &t, &t).is_zero());
        let r = [0, 3, 1, 2].map(|n| k.from_i64(n));
        assert!(e_from_roots(&r[0], &r[1], &r[2], &r[3]).is_zero());
        assert_eq!(MonicQuartic::from_roots(&r[0], &r[1], &r[2], &r[3]), MonicQuartic::from_i64(&k, -6, 11, -6, 0));

        // cube roots of unity: 2 is a primitive one mod 7
        let f7 = FieldDescriptor::prime(7).unwrap();
        let w = f7.from_i64(2);
        let roots = [f7.zero(), f7.from_i64(2), f7.from_i64(2) * &w, f7.from_i64(2) * w.square()];
        assert_eq!(e_from_roots(&roots[0], &roots[1], &roots[2], &roots[3]), f7.from_i64(-64));
        let expanded = MonicQuartic::from_roots(&roots[0], &roots[1], &roots[2], &roots[3]);
        assert_eq!(expanded, MonicQuartic::from_i64(&f7, 0, 0, -8, 0));
        assert_eq!(expanded.invariant_e(), f7.from_i64(-64));

        // same over Q(sqrt(-3)) with omega = (-1 + r)/2
        let k3 = FieldDescriptor::quadratic_extension(&k, &k.from_i64(-3)).unwrap();
        let omega = k3.parse_value("-1/2+1/2*r").unwrap();
        assert_eq!(omega.pow(3), k3.one());
        let two = k3.from_i64(2);
        let rr = [k3.zero(), two.clone(), &two * &omega, &two * omega.square()];
        assert_eq!(e_from_roots(&rr[0], &rr[1], &rr[2], &rr[3]), k3.from_i64(-64));
        assert_eq!(MonicQuartic::from_roots(&rr[0], &rr[1], &rr[2], &rr[3]), MonicQuartic::from_i64(&k3, 0, 0, -8, 0));
    }

    #[test]
    fn profile_examples() {
        let k = q();
        let p = MonicQuartic::from_i64(&k, 0, 2, 0, 1).multiplicity_profile();
        assert_eq!(p.partition, Partition::TwoDoubles);
        assert_eq!(
            p.repeated,
            vec![RepeatedRoot::ConjugatePair {
                trace: k.zero(),
                norm: k.one(),
                multiplicity: 2
            }]
        );
        let p = MonicQuartic::from_i64(&k, -12, -12, 0, 0).multiplicity_profile();
        assert_eq!(p.partition, Partition::OneDouble);
        assert_eq!(p.repeated, vec![RepeatedRoot::InField { root: k.zero(), multiplicity: 2 }]);
        assert_eq!(MonicQuartic::from_i64(&k, 0, 0, 0, 0).multiplicity_profile().partition, Partition::Quadruple);
        let (one, two) = (k.one(), k.from_i64(2));
        let p = MonicQuartic::from_roots(&one, &one, &two, &two).multiplicity_profile();
        assert_eq!(p.partition, Partition::TwoDoubles);
        assert!(p.repeated_roots_rational());
        assert_eq!(p.repeated.len(), 2);
        let p = MonicQuartic::from_roots(&one, &one, &one, &two).multiplicity_profile();
        assert_eq!(p.partition, Partition::TripleSingle);
        assert_eq!(p.to_string(), "[3,1] 1^3");
    }

    #[test]
    fn transforms() {
        let k = q();
        let x4 = MonicQuartic::from_i64(&k, 0, 0, 0, 0);
        assert_eq!(x4.translate(&k.zero()), x4);
        assert_eq!(x4.translate(&k.one()), MonicQuartic::from_i64(&k, 4, 6, 4, 1));
        let q1 = MonicQuartic::from_i64(&k, 0, 0, 1, 0);
        assert_eq!(q1.rescale_roots(&k.one()).unwrap(), q1);
        assert_eq!(q1.rescale_roots(&k.from_i64(8)).unwrap(), MonicQuartic::from_i64(&k, 0, 0, 512, 0));
        assert!(q1.rescale_roots(&k.zero()).is_err());
    }

    #[test]
    fn homogeneous_round_trip() {
        let k = q();
        let q1 = MonicQuartic::from_i64(&k, 0, 0, -8, 0);
        let h = q1.homogenize();
        assert_eq!(h.to_string(), "(1:0:0:-8:0)");
        assert_eq!(h.dehomogenize(), Some(q1));
        let at_inf = HomogeneousQuartic::new([0, 1, 0, -1, 0].map(|n| k.from_i64(n))).unwrap();
        assert_eq!(at_inf.dehomogenize(), None);
        let scaled = HomogeneousQuartic::new([2, 0, 0, 0, 2].map(|n| k.from_i64(n))).unwrap();
        assert_eq!(scaled.dehomogenize(), Some(MonicQuartic::from_i64(&k, 0, 0, 0, 1)));
        let scaled2 = HomogeneousQuartic::new([0, 3, 0, -3, 0].map(|n| k.from_i64(n))).unwrap();
        assert_eq!(scaled2, at_inf);
        assert!(HomogeneousQuartic::new([0, 0, 0, 0, 0].map(|n| k.from_i64(n))).is_err());
    }

    // Multiplicity of `r` as a root by repeated synthetic division.
    fn brute_multiplicity(p: &Poly, r: &FieldValue) -> u32 {
        let lin = Poly::linear(r);
        let mut p = p.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = p.exact_div(&lin);
            m += 1;
        }
        m
    }

    #[test]
    fn profile_matches_enumeration_over_quadratic_extension() {
        // every quartic over F_5 splits over F_25 once its repeated part is
        // at most quadratic; compare multiplicities found by scanning F_25
        let f5 = FieldDescriptor::prime(5).unwrap();
        let f25 = FieldDescriptor::quadratic_extension(&f5, &f5.from_i64(2)).unwrap();
        let elems = f25.enumerate().unwrap();
        for n in 0..625i64 {
            let c = [n % 5, n / 5 % 5, n / 25 % 5, n / 125].map(|x| f5.from_i64(x));
            let q = MonicQuartic::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()).unwrap();
            let prof = q.multiplicity_profile();
            let lifted = q.to_poly().map_coeffs(&f25, |x| f25.embed(x).unwrap());
            let mut mults: Vec<u32> = elems.iter().map(|r| brute_multiplicity(&lifted, r)).filter(|&m| m > 0).collect();
            let total: u32 = mults.iter().sum();
            mults.sort_unstable_by(|a, b| b.cmp(a));
            let repeated_total: u32 = prof.partition.parts().iter().filter(|&&m| m > 1).sum();
            let found_repeated: u32 = mults.iter().filter(|&&m| m > 1).sum();
            // repeated roots have degree at most 2 over F_5, so all of them show up in F_25
            assert_eq!(found_repeated, repeated_total, "{q}");
            if total == 4 {
                assert_eq!(mults.as_slice(), prof.partition.parts(), "{q}");
            }
            for r in &prof.repeated {
                if let RepeatedRoot::InField { root, multiplicity } = r {
                    assert_eq!(brute_multiplicity(&q.to_poly(), root), *multiplicity);
                }
            }
        }
    }
}
