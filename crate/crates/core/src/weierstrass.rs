//! Plane cubics `y^2 = x^3 + a x^2 + b x + c` and the chord-and-tangent law
//! on their smooth locus.
//!
//! Singular cubics are supported throughout: the group law is defined on the
//! complement of the singular point, and operations refuse that point.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCubic {
    a: FieldValue,
    b: FieldValue,
    c: FieldValue,
}

/// Shape of the cubic's singular locus. The singular point is `(s, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SingularityType {
    Smooth,
    /// `F = (x - s)^2 (x - t)` with `s != t`.
    Node { s: FieldValue, t: FieldValue },
    /// `F = (x - s)^3`.
    Cusp { s: FieldValue },
}

impl SingularityType {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SingularityType::Smooth)
    }

    /// Abscissa of the singular point.
    pub fn singular_abscissa(&self) -> Option<&FieldValue> {
        match self {
            SingularityType::Smooth => None,
            SingularityType::Node { s, .. } | SingularityType::Cusp { s } => Some(s),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SingularityType::Smooth => "SMOOTH",
            SingularityType::Node { .. } => "NODE",
            SingularityType::Cusp { .. } => "CUSP",
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::Smooth => write!(f, "smooth"),
            SingularityType::Node { s, t } => write!(f, "node at ({s}, 0), simple root {t}"),
            SingularityType::Cusp { s } => write!(f, "cusp at ({s}, 0)"),
        }
    }
}

/// Affine point known to satisfy the curve equation it was built against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePoint {
    x: FieldValue,
    y: FieldValue,
}

impl AffinePoint {
    pub fn x(&self) -> &FieldValue {
        &self.x
    }

    pub fn y(&self) -> &FieldValue {
        &self.y
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CubicPoint {
    Infinity,
    Affine(AffinePoint),
}

impl CubicPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CubicPoint::Infinity)
    }

    pub fn affine(&self) -> Option<&AffinePoint> {
        match self {
            CubicPoint::Infinity => None,
            CubicPoint::Affine(p) => Some(p),
        }
    }

    pub fn x(&self) -> Option<&FieldValue> {
        self.affine().map(AffinePoint::x)
    }

    pub fn y(&self) -> Option<&FieldValue> {
        self.affine().map(AffinePoint::y)
    }

    /// Reflection `(x, y) -> (x, -y)`.
    pub fn negate(&self) -> CubicPoint {
        match self {
            CubicPoint::Infinity => CubicPoint::Infinity,
            CubicPoint::Affine(p) => CubicPoint::Affine(AffinePoint {
                x: p.x.clone(),
                y: -&p.y,
            }),
        }
    }
}

impl fmt::Display for CubicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubicPoint::Infinity => write!(f, "inf"),
            CubicPoint::Affine(p) => write!(f, "{},{}", p.x, p.y),
        }
    }
}

/// Projective point `(X : Y : Z)`; equality is up to a common nonzero scalar.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    pub x: FieldValue,
    pub y: FieldValue,
    pub z: FieldValue,
}

impl ProjectivePoint {
    pub fn new(x: FieldValue, y: FieldValue, z: FieldValue) -> Result<Self> {
        let field = x.field().clone();
        field.check(&y)?;
        field.check(&z)?;
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::Homogeneous("(0:0:0) is not a projective point".into()));
        }
        Ok(ProjectivePoint { x, y, z })
    }

    pub fn from_point(field: &FieldDescriptor, p: &CubicPoint) -> Self {
        match p {
            CubicPoint::Infinity => ProjectivePoint {
                x: field.zero(),
                y: field.one(),
                z: field.zero(),
            },
            CubicPoint::Affine(p) => ProjectivePoint {
                x: p.x.clone(),
                y: p.y.clone(),
                z: field.one(),
            },
        }
    }

    /// Scale so that the last nonzero coordinate is 1.
    pub fn normalized(&self) -> ProjectivePoint {
        let pivot = [&self.z, &self.y, &self.x]
            .into_iter()
            .find(|c| !c.is_zero())
            .expect("projective point has a nonzero coordinate");
        let inv = pivot.invert().expect("nonzero pivot");
        ProjectivePoint {
            x: &self.x * &inv,
            y: &self.y * &inv,
            z: &self.z * &inv,
        }
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        let (p, q) = (self, other);
        &p.x * &q.y == &q.x * &p.y && &p.x * &q.z == &q.x * &p.z && &p.y * &q.z == &q.y * &p.z
    }
}

impl Eq for ProjectivePoint {}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.x, self.y, self.z)
    }
}

impl WeierstrassCubic {
    pub fn new(a: FieldValue, b: FieldValue, c: FieldValue) -> Result<Self> {
        a.field().check(&b)?;
        a.field().check(&c)?;
        Ok(WeierstrassCubic { a, b, c })
    }

    pub fn from_i64(field: &FieldDescriptor, a: i64, b: i64, c: i64) -> Self {
        WeierstrassCubic {
            a: field.from_i64(a),
            b: field.from_i64(b),
            c: field.from_i64(c),
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.a.field()
    }

    pub fn a(&self) -> &FieldValue {
        &self.a
    }

    pub fn b(&self) -> &FieldValue {
        &self.b
    }

    pub fn c(&self) -> &FieldValue {
        &self.c
    }

    /// `F(x) = x^3 + a x^2 + b x + c`
    pub fn f(&self, x: &FieldValue) -> FieldValue {
        ((x + &self.a) * x + &self.b) * x + &self.c
    }

    /// `F'(x) = 3x^2 + 2a x + b`
    pub fn f_prime(&self, x: &FieldValue) -> FieldValue {
        let k = self.field();
        (k.from_i64(3) * x + k.from_i64(2) * &self.a) * x + &self.b
    }

    /// `F_h(X, Z) = X^3 + a X^2 Z + b X Z^2 + c Z^3`
    pub fn f_homogeneous(&self, x: &FieldValue, z: &FieldValue) -> FieldValue {
        let z2 = z.square();
        x.square() * x + &self.a * x.square() * z + &self.b * x * &z2 + &self.c * &z2 * z
    }

    /// `dF_h/dX = 3X^2 + 2a X Z + b Z^2`
    pub fn f_prime_homogeneous(&self, x: &FieldValue, z: &FieldValue) -> FieldValue {
        let k = self.field();
        k.from_i64(3) * x.square() + k.from_i64(2) * &self.a * x * z + &self.b * z.square()
    }

    pub fn f_poly(&self) -> Poly {
        let k = self.field();
        Poly::new(k, vec![self.c.clone(), self.b.clone(), self.a.clone(), k.one()])
    }

    /// Discriminant of `F`; zero exactly when the curve is singular.
    pub fn discriminant(&self) -> FieldValue {
        let k = self.field();
        let (a, b, c) = (&self.a, &self.b, &self.c);
        a.square() * b.square() - k.from_i64(4) * b.pow(3) - k.from_i64(4) * a.pow(3) * c
            - k.from_i64(27) * c.square()
            + k.from_i64(18) * a * b * c
    }

    pub fn singularity_type(&self) -> SingularityType {
        let f = self.f_poly();
        let df = f.derivative();
        if df.is_zero() {
            // characteristic 3 with a = b = 0: F = x^3 + c = (x + c^(1/3))^3
            return SingularityType::Cusp {
                s: (-&self.c).frobenius_root(),
            };
        }
        let g = f.gcd(&df);
        match g.degree() {
            Some(0) => SingularityType::Smooth,
            Some(1) => {
                let s = -g.coeff(0);
                let t = -&self.a - self.field().from_i64(2) * &s;
                SingularityType::Node { s, t }
            }
            _ => SingularityType::Cusp {
                s: -&self.a / self.field().from_i64(3),
            },
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.singularity_type().is_smooth()
    }

    pub fn is_on_curve(&self, x: &FieldValue, y: &FieldValue) -> bool {
        y.square() == self.f(x)
    }

    /// Checked constructor for an affine point of this curve.
    pub fn point(&self, x: FieldValue, y: FieldValue) -> Result<CubicPoint> {
        self.field().check(&x)?;
        self.field().check(&y)?;
        if !self.is_on_curve(&x, &y) {
            return Err(Error::NotOnCurve {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        Ok(CubicPoint::Affine(AffinePoint { x, y }))
    }

    pub fn contains(&self, p: &CubicPoint) -> bool {
        match p {
            CubicPoint::Infinity => true,
            CubicPoint::Affine(p) => p.x.field() == self.field() && self.is_on_curve(&p.x, &p.y),
        }
    }

    /// A point is singular iff `y = 0` and `F'(x) = 0`.
    pub fn is_singular_point(&self, p: &CubicPoint) -> bool {
        match p {
            CubicPoint::Infinity => false,
            CubicPoint::Affine(p) => p.y.is_zero() && self.f_prime(&p.x).is_zero(),
        }
    }

    fn ensure_smooth(&self, p: &CubicPoint) -> Result<()> {
        debug_assert!(self.contains(p));
        if self.is_singular_point(p) {
            let p = p.affine().expect("singular points are affine");
            return Err(Error::SingularPoint {
                x: p.x.to_string(),
                y: p.y.to_string(),
            });
        }
        Ok(())
    }

    /// All affine points, for enumerable fields.
    pub fn affine_points(&self) -> Result<Vec<CubicPoint>> {
        let mut out = Vec::new();
        for x in self.field().enumerate()? {
            if let Some([r, s]) = self.f(&x).sqrt() {
                out.push(CubicPoint::Affine(AffinePoint { x: x.clone(), y: r.clone() }));
                if r != s {
                    out.push(CubicPoint::Affine(AffinePoint { x, y: s }));
                }
            }
        }
        Ok(out)
    }

    fn third_point(&self, m: &FieldValue, x1: &FieldValue, x2: &FieldValue, y1: &FieldValue) -> CubicPoint {
        // roots of F(x) - (m x + d)^2 sum to m^2 - a
        let x3 = m.square() - &self.a - x1 - x2;
        let d = y1 - m * x1;
        let y3 = -(m * &x3 + d);
        debug_assert!(self.is_on_curve(&x3, &y3));
        CubicPoint::Affine(AffinePoint { x: x3, y: y3 })
    }

    pub fn add_points(&self, p: &CubicPoint, q: &CubicPoint) -> Result<CubicPoint> {
        self.ensure_smooth(p)?;
        self.ensure_smooth(q)?;
        let (p1, q1) = match (p, q) {
            (CubicPoint::Infinity, _) => return Ok(q.clone()),
            (_, CubicPoint::Infinity) => return Ok(p.clone()),
            (CubicPoint::Affine(p1), CubicPoint::Affine(q1)) => (p1, q1),
        };
        if p1.x == q1.x {
            if p1.y == q1.y {
                return self.double_point(p);
            }
            return Ok(CubicPoint::Infinity);
        }
        let m = (&q1.y - &p1.y) / (&q1.x - &p1.x);
        Ok(self.third_point(&m, &p1.x, &q1.x, &p1.y))
    }

    /// Tangent-line doubling with slope `F'(x1) / (2 y1)`.
    pub fn double_point(&self, p: &CubicPoint) -> Result<CubicPoint> {
        self.ensure_smooth(p)?;
        let p1 = match p {
            CubicPoint::Infinity => return Ok(CubicPoint::Infinity),
            CubicPoint::Affine(p1) => p1,
        };
        if p1.y.is_zero() {
            return Ok(CubicPoint::Infinity);
        }
        let m = self.f_prime(&p1.x) / (self.field().from_i64(2) * &p1.y);
        Ok(self.third_point(&m, &p1.x, &p1.x, &p1.y))
    }

    /// Doubling in `(X : Y : Z)` coordinates. `X2 = 2Y(F'_h^2 - 4 F_h (aZ + 2X))`
    /// and `Z2 = 8 Y F_h Z`; `Y2` is scaled from the affine result.
    pub fn double_point_homogeneous(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let k = self.field();
        for c in [&p.x, &p.y, &p.z] {
            k.check(c)?;
        }
        if p.y.square() * &p.z != self.f_homogeneous(&p.x, &p.z) {
            return Err(Error::NotOnCurve {
                x: p.x.to_string(),
                y: p.y.to_string(),
            });
        }
        if p.z.is_zero() {
            // on the curve, Z = 0 forces X = 0
            return ProjectivePoint::new(k.zero(), k.one(), k.zero());
        }
        let inv = p.z.invert()?;
        let affine = CubicPoint::Affine(AffinePoint {
            x: &p.x * &inv,
            y: &p.y * &inv,
        });
        self.ensure_smooth(&affine)?;

        let fh = self.f_homogeneous(&p.x, &p.z);
        let dfh = self.f_prime_homogeneous(&p.x, &p.z);
        let x2 = k.from_i64(2) * &p.y * (dfh.square() - k.from_i64(4) * &fh * (&self.a * &p.z + k.from_i64(2) * &p.x));
        let z2 = k.from_i64(8) * &p.y * &fh * &p.z;
        if z2.is_zero() {
            return ProjectivePoint::new(k.zero(), k.one(), k.zero());
        }
        let doubled = self.double_point(&affine)?;
        let y_aff = doubled.y().expect("Z2 != 0 gives an affine double");
        let y2 = y_aff * &z2;
        debug_assert_eq!(doubled.x().cloned(), Some(&x2 / &z2));
        ProjectivePoint::new(x2, y2, z2)
    }

    /// `n * P` by double-and-add.
    pub fn multiply(&self, p: &CubicPoint, n: u64) -> Result<CubicPoint> {
        self.ensure_smooth(p)?;
        let mut acc = CubicPoint::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_points(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.double_point(&base)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for WeierstrassCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}
