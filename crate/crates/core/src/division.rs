//! The 2-division quartic of a point, its inverse, and the geometric
//! dictionary between root profiles and points on plane cubics.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::poly::{roots_in_field, Poly};
use crate::quartic::{HomogeneousQuartic, MonicQuartic, Partition};
use crate::weierstrass::{CubicPoint, SingularityType, WeierstrassCubic};

/// Quartic whose roots are the abscissae of the halves of `p2`:
///
/// `x^4 - 4 x2 x^3 - (2b + 4a x2) x^2 - (8c + 4b x2) x + (b^2 - 4ac - 4c x2)`.
///
/// Singular points are accepted.
pub fn forward_quartic(curve: &WeierstrassCubic, p2: &CubicPoint) -> Result<MonicQuartic> {
    let p = p2.affine().ok_or(Error::PointAtInfinity)?;
    debug_assert!(curve.contains(p2));
    let k = curve.field();
    let (a, b, c, x2) = (curve.a(), curve.b(), curve.c(), p.x());
    let four = k.from_i64(4);
    Ok(MonicQuartic {
        d3: -(&four * x2),
        d2: -(k.from_i64(2) * b + &four * a * x2),
        d1: -(k.from_i64(8) * c + &four * b * x2),
        d0: b.square() - &four * a * c - &four * c * x2,
    })
}

/// Projective form; for the point at infinity this is `Z * F_h = (0:1:a:b:c)`.
pub fn forward_quartic_homogeneous(curve: &WeierstrassCubic, p2: &CubicPoint) -> Result<HomogeneousQuartic> {
    match p2 {
        CubicPoint::Infinity => {
            let k = curve.field();
            HomogeneousQuartic::new([k.zero(), k.one(), curve.a().clone(), curve.b().clone(), curve.c().clone()])
        }
        CubicPoint::Affine(_) => Ok(forward_quartic(curve, p2)?.homogenize()),
    }
}

/// Which quantity must be a square for a quartic with `e != 0` to be accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignConvention {
    /// `-e(q)` square; the value of `F(x2)` is `-e/64`.
    MinusE,
    /// `e(q)` square, the literal alternative.
    PlusE,
}

impl SignConvention {
    pub fn name(self) -> &'static str {
        match self {
            SignConvention::MinusE => "minus-e",
            SignConvention::PlusE => "plus-e",
        }
    }
}

/// `slope * a + intercept`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub slope: FieldValue,
    pub intercept: FieldValue,
}

impl AffineMap {
    pub fn eval(&self, a: &FieldValue) -> FieldValue {
        &self.slope * a + &self.intercept
    }

    fn as_poly(&self) -> Poly {
        let k = self.slope.field();
        Poly::new(k, vec![self.intercept.clone(), self.slope.clone()])
    }
}

/// Curves `y^2 = x^3 + a x^2 + b(a) x + c(a)` for free `a`, each carrying
/// `(x2, 0)` as a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisionFamily {
    pub x2: FieldValue,
    pub b_of_a: AffineMap,
    pub c_of_a: AffineMap,
    pub smooth_members_exist: bool,
}

impl DivisionFamily {
    pub fn member(&self, a: &FieldValue) -> WeierstrassCubic {
        WeierstrassCubic::new(a.clone(), self.b_of_a.eval(a), self.c_of_a.eval(a)).expect("same field")
    }

    pub fn point_on(&self, member: &WeierstrassCubic) -> Result<CubicPoint> {
        member.point(self.x2.clone(), member.field().zero())
    }

    /// Discriminant of the member cubic as a polynomial in `a`.
    pub fn discriminant_in_a(&self) -> Poly {
        let k = self.x2.field();
        let a = Poly::x(k);
        let b = self.b_of_a.as_poly();
        let c = self.c_of_a.as_poly();
        let n = |v: i64| Poly::constant(k.from_i64(v));
        let a2 = &a * &a;
        let b2 = &b * &b;
        let terms = [
            &a2 * &b2,
            &(&n(-4) * &b2) * &b,
            &(&(&n(-4) * &a2) * &a) * &c,
            &(&n(-27) * &c) * &c,
            &(&(&n(18) * &a) * &b) * &c,
        ];
        terms.iter().fold(Poly::zero(k), |acc, t| &acc + t)
    }

    fn decide_smooth_members(&mut self) {
        let disc = self.discriminant_in_a();
        let field = self.x2.field().clone();
        self.smooth_members_exist = match (disc.degree(), field.order()) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(deg), Some(order)) if (deg as u128) < order => true,
            (Some(_), Some(_)) => field
                .enumerate()
                .map(|all| all.iter().any(|a| !disc.eval(a).is_zero()))
                .unwrap_or(true),
        };
    }
}

// returned by value from sweeps; boxing would only move the allocation
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DivisionOutcome {
    /// Unique curve; the point is `(x2, y2)` or `(x2, -y2)`.
    UniquePair {
        curve: WeierstrassCubic,
        x2: FieldValue,
        y2: [FieldValue; 2],
        singularity: SingularityType,
    },
    /// Unique curve, but `-e(q)` is not a square so the point lives over
    /// `K(sqrt(-e))`.
    NeedsExtension {
        curve: WeierstrassCubic,
        x2: FieldValue,
        minus_e: FieldValue,
    },
    Family(DivisionFamily),
    NotADivision { e: FieldValue, a_q: FieldValue },
}

impl DivisionOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            DivisionOutcome::UniquePair { .. } => "UNIQUE_PAIR",
            DivisionOutcome::NeedsExtension { .. } => "NEEDS_EXTENSION",
            DivisionOutcome::Family(_) => "FAMILY",
            DivisionOutcome::NotADivision { .. } => "NOT_A_DIVISION",
        }
    }

    /// The two points of a unique pair, validated on the curve.
    pub fn points(&self) -> Option<[CubicPoint; 2]> {
        match self {
            DivisionOutcome::UniquePair { curve, x2, y2, .. } => {
                let p = |y: &FieldValue| curve.point(x2.clone(), y.clone()).expect("F(x2) = y2^2");
                Some([p(&y2[0]), p(&y2[1])])
            }
            _ => None,
        }
    }
}

/// Reconstruct the curve and point that divide to `q`, when they exist.
pub fn reconstruct(q: &MonicQuartic) -> DivisionOutcome {
    let k = q.field();
    let x2 = -&q.d3 / k.from_i64(4);
    let e = q.invariant_e();
    let a_q = q.invariant_a();
    let two = k.from_i64(2);
    let sixteen = k.from_i64(16);
    let b_of_a = AffineMap {
        slope: &q.d3 / &two,
        intercept: -&q.d2 / &two,
    };
    let c_of_a = AffineMap {
        slope: q.d3.square() / &sixteen,
        intercept: -(&two * &q.d1 + &q.d2 * &q.d3) / &sixteen,
    };
    if e.is_zero() {
        if !a_q.is_zero() {
            return DivisionOutcome::NotADivision { e, a_q };
        }
        let mut family = DivisionFamily {
            x2,
            b_of_a,
            c_of_a,
            smooth_members_exist: false,
        };
        family.decide_smooth_members();
        return DivisionOutcome::Family(family);
    }
    let a = &a_q / &e;
    let curve = WeierstrassCubic::new(a.clone(), b_of_a.eval(&a), c_of_a.eval(&a)).expect("same field");
    let minus_e = -&e;
    match minus_e.sqrt() {
        Some([r, _]) => {
            let y = r / k.from_i64(8);
            let mut y2 = [y.clone(), -y];
            y2.sort();
            let singularity = curve.singularity_type();
            DivisionOutcome::UniquePair {
                curve,
                x2,
                y2,
                singularity,
            }
        }
        None => DivisionOutcome::NeedsExtension { curve, x2, minus_e },
    }
}

/// Whether `q` passes the reconstruction gate under `convention`: either
/// `e != 0` with the chosen sign a square, or `e = a(q) = 0`.
pub fn gate_accepts(q: &MonicQuartic, convention: SignConvention) -> bool {
    let e = q.invariant_e();
    if e.is_zero() {
        return q.invariant_a().is_zero();
    }
    match convention {
        SignConvention::MinusE => (-e).is_square(),
        SignConvention::PlusE => e.is_square(),
    }
}

/// `q` divides a point on a smooth cubic: a unique smooth pair, or a family
/// with `[2,2]` profile that has a smooth member.
pub fn arises_on_elliptic_curve(q: &MonicQuartic) -> bool {
    match reconstruct(q) {
        DivisionOutcome::UniquePair { singularity, .. } => singularity.is_smooth(),
        DivisionOutcome::Family(f) => {
            f.smooth_members_exist && q.multiplicity_profile().partition == Partition::TwoDoubles
        }
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisionGeometry {
    /// Smooth curve, point not 2-torsion.
    SmoothGeneric,
    TwoTorsion,
    /// Nodal curve, smooth point that is not 2-torsion.
    NodalSmoothPoint,
    CuspidalSmoothPoint,
    SingularPoint,
}

impl DivisionGeometry {
    pub fn tag(self) -> &'static str {
        match self {
            DivisionGeometry::SmoothGeneric => "SMOOTH_GENERIC",
            DivisionGeometry::TwoTorsion => "TWO_TORSION",
            DivisionGeometry::NodalSmoothPoint => "NODAL_SMOOTH_POINT",
            DivisionGeometry::CuspidalSmoothPoint => "CUSPIDAL_SMOOTH_POINT",
            DivisionGeometry::SingularPoint => "SINGULAR_POINT",
        }
    }

    pub fn from_partition(p: Partition) -> Self {
        match p {
            Partition::Distinct => DivisionGeometry::SmoothGeneric,
            Partition::TwoDoubles => DivisionGeometry::TwoTorsion,
            Partition::OneDouble => DivisionGeometry::NodalSmoothPoint,
            Partition::TripleSingle => DivisionGeometry::CuspidalSmoothPoint,
            Partition::Quadruple => DivisionGeometry::SingularPoint,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeometricClass {
    pub geometry: DivisionGeometry,
    pub three_torsion: bool,
}

impl fmt::Display for GeometricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.geometry.tag())?;
        if self.three_torsion {
            write!(f, " +THREE_TORSION")?;
        }
        Ok(())
    }
}

/// `-d3/4` is a simple root of `q`.
pub fn three_torsion_flag(q: &MonicQuartic) -> bool {
    let x2 = -&q.d3 / q.field().from_i64(4);
    q.is_simple_root(&x2)
}

/// Geometry of an affine point read from the curve and the point directly.
pub fn classify_pair(curve: &WeierstrassCubic, p2: &CubicPoint) -> Result<GeometricClass> {
    let p = p2.affine().ok_or(Error::PointAtInfinity)?;
    if curve.is_singular_point(p2) {
        return Ok(GeometricClass {
            geometry: DivisionGeometry::SingularPoint,
            three_torsion: false,
        });
    }
    let geometry = if p.y().is_zero() {
        DivisionGeometry::TwoTorsion
    } else {
        match curve.singularity_type() {
            SingularityType::Smooth => DivisionGeometry::SmoothGeneric,
            SingularityType::Node { .. } => DivisionGeometry::NodalSmoothPoint,
            SingularityType::Cusp { .. } => DivisionGeometry::CuspidalSmoothPoint,
        }
    };
    Ok(GeometricClass {
        geometry,
        three_torsion: curve.multiply(p2, 3)?.is_infinity(),
    })
}

/// Geometry read off the root profile of a division quartic.
pub fn classify_quartic(q: &MonicQuartic) -> Result<GeometricClass> {
    if let DivisionOutcome::NotADivision { a_q, .. } = reconstruct(q) {
        return Err(Error::NotADivision { a_q: a_q.to_string() });
    }
    Ok(GeometricClass {
        geometry: DivisionGeometry::from_partition(q.multiplicity_profile().partition),
        three_torsion: three_torsion_flag(q),
    })
}

/// Curve recovered from a division quartic of the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityDivision {
    pub curve: WeierstrassCubic,
    pub singularity: SingularityType,
}

/// For `d4 = 0, d3 != 0` the form is `Z * F_h` and the divided point is `O`.
pub fn classify_homogeneous(q: &HomogeneousQuartic) -> Result<InfinityDivision> {
    if !q.d4().is_zero() {
        return Err(Error::Homogeneous("d4 is nonzero; use the affine quartic".into()));
    }
    if q.d3().is_zero() {
        return Err(Error::Homogeneous(
            "d3 vanishes, so (1:0) is not a simple root and the form cannot divide O".into(),
        ));
    }
    // canonical form already has d3 = 1
    let [_, _, a, b, c] = q.coefficients().clone();
    let curve = WeierstrassCubic::new(a, b, c)?;
    let singularity = curve.singularity_type();
    Ok(InfinityDivision { curve, singularity })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halves {
    /// Halves with both coordinates in the base field, sorted by abscissa.
    pub points: Vec<CubicPoint>,
    /// Halves over the algebraic closure that are not base-field points.
    pub off_field: usize,
}

/// All `P1` over the base field with `2 P1 = P2`, for `y2 != 0`.
pub fn halves(curve: &WeierstrassCubic, p2: &CubicPoint) -> Result<Halves> {
    let p = p2.affine().ok_or(Error::PointAtInfinity)?;
    if p.y().is_zero() {
        return Err(Error::TwoTorsion);
    }
    let q = forward_quartic(curve, p2)?;
    let singularity = curve.singularity_type();
    let total = match singularity {
        SingularityType::Smooth => 4,
        SingularityType::Node { .. } => 2,
        SingularityType::Cusp { .. } => 1,
    };
    let k = curve.field();
    let minus_two_y2 = k.from_i64(-2) * p.y();
    let mut points = Vec::new();
    for (x1, _) in roots_in_field(&q.to_poly())? {
        if Some(&x1) == singularity.singular_abscissa() {
            continue;
        }
        let num = curve.f_prime(&x1) * (p.x() - &x1) + k.from_i64(2) * curve.f(&x1);
        let y1 = num / &minus_two_y2;
        points.push(curve.point(x1, y1)?);
    }
    debug_assert!(points.len() <= total);
    let off_field = total - points.len();
    Ok(Halves { points, off_field })
}

/// `(eps, q')` with `eps = e(q)` and `q'` the quartic with roots scaled by
/// `eps`, so that `e(q') = e(q)^4` is a nonzero square.
pub fn rescale_to_square(q: &MonicQuartic) -> Result<(FieldValue, MonicQuartic)> {
    let eps = q.invariant_e();
    if eps.is_zero() {
        return Err(Error::ZeroInvariant);
    }
    let scaled = q.rescale_roots(&eps)?;
    debug_assert_eq!(scaled.invariant_e(), eps.pow(4));
    Ok((eps, scaled))
}

/// Means and covariance over the four halves of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatisticsReport {
    pub p2: CubicPoint,
    pub slopes: [FieldValue; 4],
    pub mean_x: FieldValue,
    pub mean_y: FieldValue,
    /// `mean(m x) - mean(m) mean(x)`
    pub covariance: FieldValue,
    /// `cov(m, x) - mean(y)`, which equals `y2`.
    pub difference_form: FieldValue,
    /// `mean(y) + cov(m, x)`
    pub sum_form: FieldValue,
    pub mean_matches: bool,
    pub difference_form_holds: bool,
    pub sum_form_holds: bool,
}

/// Tangent slopes at the four halves of one point on a smooth curve, and
/// the mean/covariance description of that point.
pub fn statistics_identity_check(curve: &WeierstrassCubic, halves: &[CubicPoint]) -> Result<StatisticsReport> {
    if !curve.is_smooth() {
        return Err(Error::Halves("the curve is singular".into()));
    }
    if halves.len() != 4 {
        return Err(Error::Halves(format!("got {} points", halves.len())));
    }
    let mut pts = Vec::with_capacity(4);
    for h in halves {
        let p = h.affine().ok_or_else(|| Error::Halves("a half is the point at infinity".into()))?;
        if !curve.contains(h) {
            return Err(Error::NotOnCurve {
                x: p.x().to_string(),
                y: p.y().to_string(),
            });
        }
        if p.y().is_zero() {
            return Err(Error::Halves("a half is 2-torsion".into()));
        }
        pts.push(p.clone());
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::Halves("halves are not distinct".into()));
            }
        }
    }
    let p2 = curve.double_point(&halves[0])?;
    for h in &halves[1..] {
        if curve.double_point(h)? != p2 {
            return Err(Error::Halves("points do not share a double".into()));
        }
    }
    let p2a = p2.affine().ok_or_else(|| Error::Halves("the halves double to infinity".into()))?;
    let k = curve.field();
    let four = k.from_i64(4);
    let two = k.from_i64(2);
    let slopes: [FieldValue; 4] = std::array::from_fn(|i| curve.f_prime(pts[i].x()) / (&two * pts[i].y()));
    let mean = |f: &dyn Fn(usize) -> FieldValue| (0..4).map(f).fold(k.zero(), |a, b| a + b) / &four;
    let mean_x = mean(&|i| pts[i].x().clone());
    let mean_y = mean(&|i| pts[i].y().clone());
    let mean_m = mean(&|i| slopes[i].clone());
    let mean_mx = mean(&|i| &slopes[i] * pts[i].x());
    let covariance = mean_mx - &mean_m * &mean_x;
    let difference_form = &covariance - &mean_y;
    let sum_form = &mean_y + &covariance;
    Ok(StatisticsReport {
        mean_matches: &mean_x == p2a.x(),
        difference_form_holds: &difference_form == p2a.y(),
        sum_form_holds: &sum_form == p2a.y(),
        p2,
        slopes,
        mean_x,
        mean_y,
        covariance,
        difference_form,
        sum_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::quartic::RepeatedRoot;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    fn pt(c: &WeierstrassCubic, x: i64, y: i64) -> CubicPoint {
        c.point(c.field().from_i64(x), c.field().from_i64(y)).unwrap()
    }

    // x-coordinates of all P1 with 2 P1 = +-P2, by scanning points
    fn halves_scan(c: &WeierstrassCubic, p2: &CubicPoint) -> Vec<FieldValue> {
        let mut xs: Vec<FieldValue> = c
            .affine_points()
            .unwrap()
            .into_iter()
            .filter(|p| !c.is_singular_point(p))
            .filter(|p| c.double_point(p).unwrap() == *p2)
            .map(|p| p.x().unwrap().clone())
            .collect();
        xs.sort();
        xs
    }

    #[test]
    fn forward_examples() {
        let k = q();
        let c = WeierstrassCubic::from_i64(&k, 0, 0, 1);
        assert_eq!(forward_quartic(&c, &pt(&c, 2, 3)).unwrap(), MonicQuartic::from_i64(&k, -8, 0, -8, -8));
        assert_eq!(forward_quartic(&c, &pt(&c, 2, -3)).unwrap(), MonicQuartic::from_i64(&k, -8, 0, -8, -8));
        assert!(matches!(forward_quartic(&c, &CubicPoint::Infinity), Err(Error::PointAtInfinity)));

        let nodal = WeierstrassCubic::from_i64(&k, 1, 0, 0);
        let q1 = forward_quartic(&nodal, &pt(&nodal, 3, 6)).unwrap();
        assert_eq!(q1, MonicQuartic::from_i64(&k, -12, -12, 0, 0));
        assert_eq!(q1.to_poly().rem(&Poly::x(&k).pow(2)), Poly::zero(&k));
        assert_eq!(forward_quartic(&nodal, &pt(&nodal, 0, 0)).unwrap(), MonicQuartic::from_i64(&k, 0, 0, 0, 0));

        // the 2-division quartic of a singular point is (x - s)^4 on every singular curve
        let f = fp(11);
        for s in 0..11 {
            for t in 0..11 {
                let (sv, tv) = (f.from_i64(s), f.from_i64(t));
                let poly = &(&Poly::linear(&sv) * &Poly::linear(&sv)) * &Poly::linear(&tv);
                let c = WeierstrassCubic::new(poly.coeff(2), poly.coeff(1), poly.coeff(0)).unwrap();
                let sing = c.point(sv.clone(), f.zero()).unwrap();
                assert_eq!(forward_quartic(&c, &sing).unwrap(), MonicQuartic::from_roots(&sv, &sv, &sv, &sv));
            }
        }
    }

    #[test]
    fn homogeneous_examples() {
        let k = q();
        let c = WeierstrassCubic::from_i64(&k, 0, -1, 0);
        let h = forward_quartic_homogeneous(&c, &CubicPoint::Infinity).unwrap();
        assert_eq!(h.to_string(), "(0:1:0:-1:0)");
        for (x, z) in [(1, 0), (0, 1), (1, 1), (-1, 1)] {
            assert!(h.eval(&k.from_i64(x), &k.from_i64(z)).is_zero());
        }
        let c = WeierstrassCubic::from_i64(&k, 0, 0, 1);
        let p = pt(&c, 2, 3);
        assert_eq!(
            forward_quartic_homogeneous(&c, &p).unwrap(),
            forward_quartic(&c, &p).unwrap().homogenize()
        );
        assert!(forward_quartic_homogeneous(&c, &CubicPoint::Infinity).unwrap().d3().is_one());
    }

    #[test]
    fn reconstruct_examples() {
        let k = q();
        let out = reconstruct(&MonicQuartic::from_i64(&k, -8, 0, -8, -8));
        assert_eq!(
            out,
            DivisionOutcome::UniquePair {
                curve: WeierstrassCubic::from_i64(&k, 0, 0, 1),
                x2: k.from_i64(2),
                y2: [k.from_i64(-3), k.from_i64(3)],
                singularity: SingularityType::Smooth,
            }
        );
        assert_eq!(out.tag(), "UNIQUE_PAIR");

        let fam = MonicQuartic::from_i64(&k, 0, 2, 0, 1);
        let DivisionOutcome::Family(f) = reconstruct(&fam) else {
            panic!("expected a family")
        };
        assert_eq!(f.x2, k.zero());
        for a in -3..=3 {
            let a = k.from_i64(a);
            assert_eq!(f.b_of_a.eval(&a), k.from_i64(-1));
            assert_eq!(f.c_of_a.eval(&a), k.zero());
            let member = f.member(&a);
            let p = f.point_on(&member).unwrap();
            assert_eq!(forward_quartic(&member, &p).unwrap(), fam);
            if member.is_smooth() {
                assert!(member.double_point(&p).unwrap().is_infinity());
            }
        }
        assert!(f.smooth_members_exist);
        assert!(arises_on_elliptic_curve(&fam));

        let w = MonicQuartic::from_i64(&k, -6, 11, -6, 0);
        assert_eq!(
            reconstruct(&w),
            DivisionOutcome::NotADivision {
                e: k.zero(),
                a_q: k.from_i64(-16)
            }
        );
        assert!(matches!(classify_quartic(&w), Err(Error::NotADivision { .. })));

        // unique but nodal
        let out = reconstruct(&MonicQuartic::from_i64(&k, -12, -12, 0, 0));
        let DivisionOutcome::UniquePair { curve, singularity, .. } = &out else {
            panic!("expected a unique pair")
        };
        assert_eq!(curve, &WeierstrassCubic::from_i64(&k, 1, 0, 0));
        assert!(!singularity.is_smooth());
        assert!(!arises_on_elliptic_curve(&MonicQuartic::from_i64(&k, -12, -12, 0, 0)));

        // -e = 2 is not a square over Q
        let ne = MonicQuartic::new(k.zero(), k.zero(), k.from_ratio(&(-1).into(), &4.into()).unwrap(), k.zero()).unwrap();
        assert!(matches!(reconstruct(&ne), DivisionOutcome::NeedsExtension { .. }));
    }

    #[test]
    fn fourth_power_family_has_only_singular_members() {
        let k = q();
        let x4 = MonicQuartic::from_i64(&k, 0, 0, 0, 0);
        let DivisionOutcome::Family(f) = reconstruct(&x4) else {
            panic!("expected a family")
        };
        assert!(!f.smooth_members_exist);
        assert!(f.discriminant_in_a().is_zero());
        for a in -4..=4 {
            let member = f.member(&k.from_i64(a));
            match member.singularity_type() {
                SingularityType::Cusp { s } => {
                    assert_eq!(a, 0);
                    assert!(s.is_zero());
                }
                SingularityType::Node { s, .. } => {
                    assert_ne!(a, 0);
                    assert!(s.is_zero());
                }
                SingularityType::Smooth => panic!("member {a} is smooth"),
            }
        }
        let class = classify_quartic(&x4).unwrap();
        assert_eq!(class.geometry, DivisionGeometry::SingularPoint);
        assert!(!arises_on_elliptic_curve(&x4));
    }

    #[test]
    fn classify_examples() {
        let k = q();
        let c = WeierstrassCubic::from_i64(&k, 0, 0, 1);
        let p = pt(&c, 0, 1);
        let qq = forward_quartic(&c, &p).unwrap();
        assert_eq!(qq, MonicQuartic::from_i64(&k, 0, 0, -8, 0));
        let expect = GeometricClass {
            geometry: DivisionGeometry::SmoothGeneric,
            three_torsion: true,
        };
        assert_eq!(classify_quartic(&qq).unwrap(), expect);
        assert_eq!(classify_pair(&c, &p).unwrap(), expect);
        assert_eq!(
            classify_quartic(&MonicQuartic::from_i64(&k, -12, -12, 0, 0)).unwrap().geometry,
            DivisionGeometry::NodalSmoothPoint
        );
    }

    #[test]
    fn classify_homogeneous_examples() {
        let k = q();
        let h = |c: [i64; 5]| HomogeneousQuartic::new(c.map(|n| k.from_i64(n))).unwrap();
        assert_eq!(classify_homogeneous(&h([0, 1, 0, -1, 0])).unwrap().singularity, SingularityType::Smooth);
        assert!(matches!(
            classify_homogeneous(&h([0, 1, 1, 0, 0])).unwrap().singularity,
            SingularityType::Node { .. }
        ));
        assert_eq!(
            classify_homogeneous(&h([0, 1, 0, 0, 0])).unwrap().singularity,
            SingularityType::Cusp { s: k.zero() }
        );
        assert!(classify_homogeneous(&h([1, 0, 0, 0, 0])).is_err());
        assert!(classify_homogeneous(&h([0, 0, 1, 0, 0])).is_err());
        // scaled input is normalized before reading the curve
        assert_eq!(classify_homogeneous(&h([0, 2, 0, -2, 0])).unwrap().curve, WeierstrassCubic::from_i64(&k, 0, -1, 0));
    }

    #[test]
    fn halves_examples() {
        let k = fp(7);
        let c = WeierstrassCubic::from_i64(&k, 0, 0, 1);
        let p2 = pt(&c, 0, 1);
        let qq = forward_quartic(&c, &p2).unwrap();
        assert_eq!(qq, MonicQuartic::from_i64(&k, 0, 0, -1, 0));
        let h = halves(&c, &p2).unwrap();
        let expect: Vec<CubicPoint> = [(0, 6), (1, 3), (2, 3), (4, 3)].iter().map(|&(x, y)| pt(&c, x, y)).collect();
        assert_eq!(h.points, expect);
        assert_eq!(h.off_field, 0);
        for half in &h.points {
            assert_eq!(c.double_point(half).unwrap(), p2);
        }
        let xs: Vec<FieldValue> = expect.iter().map(|p| p.x().unwrap().clone()).collect();
        assert_eq!(halves_scan(&c, &p2), xs);
        // (0,6) = -P2 is the half sitting over x2
        assert!(h.points.contains(&p2.negate()));

        let p3 = pt(&c, 2, 3);
        assert_eq!(forward_quartic(&c, &p3).unwrap(), MonicQuartic::from_i64(&k, -1, 0, -1, -1));
        let h = halves(&c, &p3).unwrap();
        assert!(h.points.is_empty());
        assert_eq!(h.off_field, 4);
        assert!(halves_scan(&c, &p3).is_empty());

        let t = WeierstrassCubic::from_i64(&k, 0, -1, 0);
        assert!(matches!(halves(&t, &pt(&t, 0, 0)), Err(Error::TwoTorsion)));
    }

    #[test]
    fn halves_match_scan_over_f11() {
        let k = fp(11);
        for a in 0..11 {
            for b in [0, 1, 5] {
                for cc in 0..11 {
                    let c = WeierstrassCubic::from_i64(&k, a, b, cc);
                    for p2 in c.affine_points().unwrap() {
                        if p2.y().unwrap().is_zero() {
                            continue;
                        }
                        let h = halves(&c, &p2).unwrap();
                        let xs: Vec<FieldValue> = h.points.iter().map(|p| p.x().unwrap().clone()).collect();
                        assert_eq!(xs, halves_scan(&c, &p2), "{c} {p2}");
                    }
                }
            }
        }
    }

    #[test]
    fn halves_over_rationals() {
        let k = q();
        let c = WeierstrassCubic::from_i64(&k, 0, 0, 1);
        let h = halves(&c, &pt(&c, 0, 1)).unwrap();
        // x^4 - 8x = x (x - 2)(x^2 + 2x + 4)
        assert_eq!(h.points, vec![pt(&c, 0, -1), pt(&c, 2, 3)]);
        assert_eq!(h.off_field, 2);
    }

    #[test]
    fn rescale_examples() {
        let k = q();
        let (eps, scaled) = rescale_to_square(&MonicQuartic::from_i64(&k, 0, 0, 1, 0)).unwrap();
        assert_eq!(eps, k.from_i64(8));
        assert_eq!(scaled, MonicQuartic::from_i64(&k, 0, 0, 512, 0));
        assert_eq!(scaled.invariant_e(), k.from_i64(4096));
        let (eps, scaled) = rescale_to_square(&MonicQuartic::from_i64(&k, -8, 0, -8, -8)).unwrap();
        assert_eq!(eps, k.from_i64(-576));
        assert_eq!(scaled.invariant_e(), k.from_i64(-576).pow(4));
        // e = 8 d1 = 1
        let unit = MonicQuartic::new(k.zero(), k.zero(), k.from_ratio(&1.into(), &8.into()).unwrap(), k.from_i64(3)).unwrap();
        assert_eq!(rescale_to_square(&unit).unwrap(), (k.one(), unit.clone()));
        assert!(matches!(rescale_to_square(&MonicQuartic::from_i64(&k, 0, 0, 0, 0)), Err(Error::ZeroInvariant)));
    }

    #[test]
    fn statistics_worked_instance() {
        let k = fp(7);
        let c = WeierstrassCubic::from_i64(&k, 0, 0, 1);
        let hs: Vec<CubicPoint> = [(0, 6), (1, 3), (2, 3), (4, 3)].iter().map(|&(x, y)| pt(&c, x, y)).collect();
        let r = statistics_identity_check(&c, &hs).unwrap();
        assert_eq!(r.p2, pt(&c, 0, 1));
        assert_eq!(r.slopes, [0, 4, 2, 1].map(|n| k.from_i64(n)));
        assert_eq!(r.mean_x, k.zero());
        assert_eq!(r.mean_y, k.from_i64(2));
        assert_eq!(r.covariance, k.from_i64(3));
        assert_eq!(r.difference_form, k.one());
        assert!(r.mean_matches && r.difference_form_holds);
        assert_eq!(r.sum_form, k.from_i64(5));
        assert!(!r.sum_form_holds);
        assert!(statistics_identity_check(&c, &hs[..3]).is_err());
    }

    #[test]
    fn conjugate_double_roots_are_two_torsion() {
        // (x^2 + 1)^2 divides (0,0) on y^2 = x^3 + a x^2 - x
        let k = q();
        let qq = MonicQuartic::from_i64(&k, 0, 2, 0, 1);
        let prof = qq.multiplicity_profile();
        assert!(matches!(prof.repeated[0], RepeatedRoot::ConjugatePair { .. }));
        assert_eq!(classify_quartic(&qq).unwrap().geometry, DivisionGeometry::TwoTorsion);
        let c = WeierstrassCubic::from_i64(&k, 5, -1, 0);
        assert_eq!(classify_pair(&c, &pt(&c, 0, 0)).unwrap().geometry, DivisionGeometry::TwoTorsion);
    }

    #[test]
    fn gate_conventions() {
        let f5 = fp(5);
        let f7 = fp(7);
        // -1 is a square mod 5 but not mod 7
        let q5 = MonicQuartic::from_i64(&f5, 0, 0, 1, 0);
        assert_eq!(gate_accepts(&q5, SignConvention::MinusE), gate_accepts(&q5, SignConvention::PlusE));
        let q7 = MonicQuartic::from_i64(&f7, 0, 0, 1, 0); // e = 8 = 1
        assert!(gate_accepts(&q7, SignConvention::PlusE));
        assert!(!gate_accepts(&q7, SignConvention::MinusE));
        assert!(matches!(reconstruct(&q7), DivisionOutcome::NeedsExtension { .. }));
    }
}
