//! Exhaustive sweeps over small prime fields.
//!
//! The observed side of every comparison is computed from point
//! enumeration, the group law and repeated synthetic division only. The
//! expected side calls the reconstruction and classification code under
//! test.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::division::{
    classify_homogeneous, classify_pair, classify_quartic, forward_quartic, forward_quartic_homogeneous, gate_accepts,
    reconstruct, statistics_identity_check, three_torsion_flag, DivisionGeometry, DivisionOutcome, SignConvention,
};
use crate::error::Result;
use crate::field::{FieldDescriptor, FieldValue};
use crate::poly::Poly;
use crate::quartic::{MonicQuartic, Partition};
use crate::weierstrass::{CubicPoint, SingularityType, WeierstrassCubic};

/// Largest prime swept unless the caller raises the bound.
pub const DEFAULT_MAX_PRIME: u64 = 13;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub input: String,
    pub expected: String,
    pub observed: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, observed {}", self.input, self.expected, self.observed)
    }
}

/// Outcome of one sweep. Passed iff `discrepancies` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub name: String,
    pub prime: u64,
    pub counts: BTreeMap<String, u64>,
    pub discrepancies: Vec<Discrepancy>,
}

impl SweepReport {
    fn new(name: impl Into<String>, prime: u64) -> Self {
        SweepReport {
            name: name.into(),
            prime,
            counts: BTreeMap::new(),
            discrepancies: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    fn bump(&mut self, key: &str) {
        self.bump_by(key, 1);
    }

    fn bump_by(&mut self, key: &str, n: u64) {
        *self.counts.entry(key.to_string()).or_default() += n;
    }

    fn fail(&mut self, input: impl fmt::Display, expected: impl fmt::Display, observed: impl fmt::Display) {
        self.discrepancies.push(Discrepancy {
            input: input.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
        });
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.discrepancies.extend(other.discrepancies);
        self
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{} p={} {}", self.name, self.prime, verdict)?;
        for (k, v) in &self.counts {
            write!(f, " {k}={v}")?;
        }
        write!(f, " discrepancies={}", self.discrepancies.len())
    }
}

fn field(p: u64) -> Result<FieldDescriptor> {
    Ok(FieldDescriptor::prime(p)?)
}

/// Every cubic `y^2 = x^3 + a x^2 + b x + c` over the field, in `(a, b, c)`
/// lexicographic order.
pub fn all_curves(k: &FieldDescriptor) -> Result<Vec<WeierstrassCubic>> {
    let elems = k.enumerate()?;
    let mut out = Vec::with_capacity(elems.len().pow(3));
    for a in &elems {
        for b in &elems {
            for c in &elems {
                out.push(WeierstrassCubic::new(a.clone(), b.clone(), c.clone())?);
            }
        }
    }
    Ok(out)
}

/// Every monic quartic over the field.
pub fn all_monic_quartics(k: &FieldDescriptor) -> Result<Vec<MonicQuartic>> {
    let elems = k.enumerate()?;
    let mut out = Vec::with_capacity(elems.len().pow(4));
    for d3 in &elems {
        for d2 in &elems {
            for d1 in &elems {
                for d0 in &elems {
                    out.push(MonicQuartic::new(d3.clone(), d2.clone(), d1.clone(), d0.clone())?);
                }
            }
        }
    }
    Ok(out)
}

/// Run `f` on every curve in parallel and merge reports in curve order.
fn sweep_curves<F>(name: &str, p: u64, f: F) -> Result<SweepReport>
where
    F: Fn(&WeierstrassCubic, &mut SweepReport) + Sync,
{
    let k = field(p)?;
    let curves = all_curves(&k)?;
    let parts: Vec<SweepReport> = curves
        .par_iter()
        .map(|c| {
            let mut r = SweepReport::new(name, p);
            r.bump("curves");
            f(c, &mut r);
            r
        })
        .collect();
    Ok(parts.into_iter().fold(SweepReport::new(name, p), SweepReport::merge))
}

fn pair_label(c: &WeierstrassCubic, p: &CubicPoint) -> String {
    format!("C=({c}) P2=({p})")
}

/// Multiplicity of `r` as a root, by repeated synthetic division.
pub fn root_multiplicity(f: &Poly, r: &FieldValue) -> u32 {
    let lin = Poly::linear(r);
    let mut f = f.clone();
    let mut m = 0;
    while !f.is_zero() && f.eval(r).is_zero() {
        f = f.div_rem(&lin).0;
        m += 1;
    }
    m
}

/// `F_{p^2}` built on the least quadratic nonresidue.
pub fn quadratic_closure_step(k: &FieldDescriptor) -> Result<FieldDescriptor> {
    let d = k
        .enumerate()?
        .into_iter()
        .find(|d| !d.is_zero() && !d.is_square())
        .expect("odd prime fields have nonresidues");
    Ok(FieldDescriptor::quadratic_extension(k, &d)?)
}

fn lift_poly(f: &Poly, ext: &FieldDescriptor) -> Poly {
    f.map_coeffs(ext, |c| ext.embed(c).expect("base element"))
}

/// Partition of 4 from root multiplicities found by scanning `F_{p^2}`.
/// Repeated roots of a quartic lie in a factor of degree at most 2, so all
/// of them are seen; roots outside `F_{p^2}` are simple.
pub fn partition_by_enumeration(q: &MonicQuartic, ext: &FieldDescriptor) -> Partition {
    let f = lift_poly(&q.to_poly(), ext);
    let mut mults: Vec<u32> = ext
        .enumerate()
        .expect("small extension")
        .iter()
        .map(|r| root_multiplicity(&f, r))
        .filter(|&m| m > 1)
        .collect();
    let repeated: u32 = mults.iter().sum();
    mults.extend(std::iter::repeat_n(1, (4 - repeated) as usize));
    mults.sort_unstable_by(|a, b| b.cmp(a));
    *Partition::ALL
        .iter()
        .find(|p| p.parts() == mults.as_slice())
        .expect("multiplicities partition 4")
}

/// The singular abscissa and its multiplicity in `F` (2 node, 3 cusp), by
/// scanning the base field for `F = F' = 0`.
pub fn singular_abscissa_by_enumeration(c: &WeierstrassCubic) -> Option<(FieldValue, u32)> {
    let f = c.f_poly();
    let df = f.derivative();
    c.field()
        .enumerate()
        .expect("enumerable field")
        .into_iter()
        .find(|x| f.eval(x).is_zero() && df.eval(x).is_zero())
        .map(|x| {
            let m = root_multiplicity(&f, &x);
            (x, m)
        })
}

fn geometry_by_enumeration(c: &WeierstrassCubic, p2: &CubicPoint) -> DivisionGeometry {
    let p = p2.affine().expect("affine point");
    let sing = singular_abscissa_by_enumeration(c);
    match sing {
        Some((s, _)) if &s == p.x() && p.y().is_zero() => DivisionGeometry::SingularPoint,
        _ if p.y().is_zero() => DivisionGeometry::TwoTorsion,
        None => DivisionGeometry::SmoothGeneric,
        Some((_, 2)) => DivisionGeometry::NodalSmoothPoint,
        Some(_) => DivisionGeometry::CuspidalSmoothPoint,
    }
}

/// Abscissae `x1` in the base field of the points `P1` (over `F_{p^2}`)
/// with `2 P1 = P2`, each repeated once per such `P1`, together with the
/// singular abscissa at multiplicity 2, 3 or 4 for a node, a cusp, or `P2`
/// itself singular. Uses point scans and doubling only.
pub fn halves_by_enumeration(c: &WeierstrassCubic, p2: &CubicPoint, ext: &FieldDescriptor) -> Vec<FieldValue> {
    let k = c.field();
    let lift = |v: &FieldValue| ext.embed(v).expect("base element");
    let big = WeierstrassCubic::new(lift(c.a()), lift(c.b()), lift(c.c())).expect("same field");
    let p = p2.affine().expect("affine point");
    let target = big.point(lift(p.x()), lift(p.y())).expect("lifted point stays on the curve");
    let mut out = Vec::new();
    for x1 in k.enumerate().expect("enumerable field") {
        let bx = lift(&x1);
        let Some([r, s]) = big.f(&bx).sqrt() else {
            unreachable!("every element of F_p is a square in F_p^2")
        };
        let ys = if r == s { vec![r] } else { vec![r, s] };
        for y in ys {
            let cand = big.point(bx.clone(), y).expect("on the curve");
            if big.is_singular_point(&cand) {
                continue;
            }
            if big.double_point(&cand).expect("smooth") == target {
                out.push(x1.clone());
            }
        }
    }
    if let Some((s, m)) = singular_abscissa_by_enumeration(c) {
        let extra = if &s == p.x() && p.y().is_zero() { 4 } else { m };
        out.extend(std::iter::repeat_n(s, extra as usize));
    }
    out.sort();
    out
}

fn roots_with_multiplicity_by_scan(f: &Poly) -> Vec<FieldValue> {
    let mut out = Vec::new();
    for r in f.field().enumerate().expect("enumerable field") {
        let m = root_multiplicity(f, &r);
        out.extend(std::iter::repeat_n(r, m as usize));
    }
    out
}

/// Halves multiset from enumeration against base-field roots of the
/// division quartic, for every curve and affine point.
pub fn halves_sweep(p: u64) -> Result<SweepReport> {
    let ext = quadratic_closure_step(&field(p)?)?;
    sweep_curves("halves", p, |c, r| {
        for p2 in c.affine_points().expect("enumerable") {
            r.bump("pairs");
            let observed = halves_by_enumeration(c, &p2, &ext);
            let q = forward_quartic(c, &p2).expect("affine");
            let expected = roots_with_multiplicity_by_scan(&q.to_poly());
            if observed != expected {
                r.fail(pair_label(c, &p2), format!("{expected:?}"), format!("{observed:?}"));
            }
        }
    })
}

/// Reconstruction gate under both sign conventions, compared against the
/// enumerated image of the forward map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateSweep {
    pub minus_e: SweepReport,
    pub plus_e: SweepReport,
}

impl GateSweep {
    pub fn report(&self, convention: SignConvention) -> &SweepReport {
        match convention {
            SignConvention::MinusE => &self.minus_e,
            SignConvention::PlusE => &self.plus_e,
        }
    }
}

/// Image of `forward_quartic` over every curve and every affine point.
pub fn forward_image(k: &FieldDescriptor) -> Result<HashSet<MonicQuartic>> {
    let curves = all_curves(k)?;
    let parts: Vec<Vec<MonicQuartic>> = curves
        .par_iter()
        .map(|c| {
            c.affine_points()
                .expect("enumerable")
                .iter()
                .map(|p| forward_quartic(c, p).expect("affine"))
                .collect()
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

/// `F(-d3/4) = -e/64` for a unique pair.
pub fn value_identity_holds(q: &MonicQuartic, out: &DivisionOutcome) -> bool {
    match out {
        DivisionOutcome::UniquePair { curve, x2, .. } => {
            let k = q.field();
            x2 == &(-&q.d3 / k.from_i64(4)) && curve.f(x2) == -q.invariant_e() / k.from_i64(64)
        }
        _ => true,
    }
}

pub fn gate_sweep(p: u64) -> Result<GateSweep> {
    let k = field(p)?;
    let image = forward_image(&k)?;
    let quartics = all_monic_quartics(&k)?;
    let mut reports = GateSweep {
        minus_e: SweepReport::new("gate[minus-e]", p),
        plus_e: SweepReport::new("gate[plus-e]", p),
    };
    for conv in [SignConvention::MinusE, SignConvention::PlusE] {
        let r = match conv {
            SignConvention::MinusE => &mut reports.minus_e,
            SignConvention::PlusE => &mut reports.plus_e,
        };
        r.bump_by("quartics", quartics.len() as u64);
        r.bump_by("image", image.len() as u64);
        for q in &quartics {
            let in_image = image.contains(q);
            let accepted = gate_accepts(q, conv);
            if accepted {
                r.bump("accepted");
            }
            if accepted != in_image {
                r.fail(
                    format!("q={q}"),
                    format!("in image: {in_image}"),
                    format!("gate accepts: {accepted}"),
                );
            }
            if conv == SignConvention::MinusE {
                let out = reconstruct(q);
                if let DivisionOutcome::UniquePair { .. } = out {
                    r.bump("unique_pairs");
                    if !value_identity_holds(q, &out) {
                        r.fail(format!("q={q}"), "F(x2) = -e/64", "identity fails");
                    }
                }
            }
        }
    }
    Ok(reports)
}

/// `reconstruct(forward_quartic(C, P2))` recovers `C` and `{P2, -P2}` for
/// every smooth affine point with `e != 0`.
pub fn roundtrip_sweep(p: u64) -> Result<SweepReport> {
    sweep_curves("roundtrip", p, |c, r| {
        for p2 in c.affine_points().expect("enumerable") {
            if c.is_singular_point(&p2) {
                continue;
            }
            let q = forward_quartic(c, &p2).expect("affine");
            if q.invariant_e().is_zero() {
                continue;
            }
            r.bump("instances");
            let out = reconstruct(&q);
            let (x, y) = (p2.x().expect("affine"), p2.y().expect("affine"));
            let mut ys = [y.clone(), -y];
            ys.sort();
            match &out {
                DivisionOutcome::UniquePair { curve, x2, y2, .. } if curve == c && x2 == x && y2 == &ys => {
                    r.bump("unique_pairs");
                    if !value_identity_holds(&q, &out) {
                        r.fail(pair_label(c, &p2), "F(x2) = -e/64", "identity fails");
                    }
                }
                other => r.fail(pair_label(c, &p2), "unique pair recovering the input", format!("{other:?}")),
            }
        }
    })
}

/// Root profile against the geometry of `(C, P2)`, including the family
/// members of `(x - s)^4`.
pub fn classification_sweep(p: u64) -> Result<SweepReport> {
    let k = field(p)?;
    let ext = quadratic_closure_step(&k)?;
    let elems = k.enumerate()?;
    sweep_curves("classify", p, |c, r| {
        for p2 in c.affine_points().expect("enumerable") {
            let label = pair_label(c, &p2);
            let observed = geometry_by_enumeration(c, &p2);
            r.bump(observed.tag());
            let q = forward_quartic(c, &p2).expect("affine");
            let partition = partition_by_enumeration(&q, &ext);
            if DivisionGeometry::from_partition(partition) != observed {
                r.fail(&label, format!("{observed:?}"), format!("profile {partition}"));
            }
            if q.multiplicity_profile().partition != partition {
                r.fail(&label, format!("profile {partition}"), format!("gcd profile {}", q.multiplicity_profile()));
            }
            match classify_quartic(&q) {
                Ok(class) if class.geometry == observed => {}
                other => r.fail(&label, format!("{observed:?}"), format!("from quartic {other:?}")),
            }
            match classify_pair(c, &p2) {
                Ok(class) if class.geometry == observed => {}
                other => r.fail(&label, format!("{observed:?}"), format!("from pair {other:?}")),
            }
            // e = 0 iff 2-torsion, away from the singular point
            if partition != Partition::Quadruple {
                let e_zero = q.invariant_e().is_zero();
                let two_torsion = p2.y().expect("affine").is_zero();
                if e_zero != two_torsion || (partition == Partition::TwoDoubles) != two_torsion {
                    r.fail(&label, format!("e = 0 and [2,2] iff y2 = 0 ({two_torsion})"), format!("e = 0: {e_zero}, profile {partition}"));
                }
            }
            if partition == Partition::Quadruple {
                let s = p2.x().expect("affine").clone();
                let DivisionOutcome::Family(fam) = reconstruct(&q) else {
                    r.fail(&label, "family", "other outcome");
                    continue;
                };
                for a in &elems {
                    r.bump("quadruple_members");
                    let member = fam.member(a);
                    let sing = singular_abscissa_by_enumeration(&member);
                    // parameter lambda = -a writes the member as (x - s)^2 (x - (lambda - 2s))
                    let lambda = -a;
                    let cusp_expected = lambda == k.from_i64(3) * &s;
                    match sing {
                        Some((x, m)) if x == s && (m == 3) == cusp_expected => {
                            if cusp_expected {
                                r.bump("quadruple_cusps");
                            }
                        }
                        other => r.fail(
                            format!("{label} member a={a}"),
                            format!("singular at ({s},0), cusp iff lambda = 3s ({cusp_expected})"),
                            format!("{other:?}"),
                        ),
                    }
                }
            }
        }
    })
}

/// The 3-torsion flag against `3 P2 = O`, and the per-curve count of
/// flagged quartics against half the number of points of order 3.
pub fn torsion_sweep(p: u64) -> Result<SweepReport> {
    sweep_curves("torsion", p, |c, r| {
        let mut flagged = HashSet::new();
        let mut order_three = 0u64;
        for p2 in c.affine_points().expect("enumerable") {
            if c.is_singular_point(&p2) {
                continue;
            }
            r.bump("points");
            let twice = c.add_points(&p2, &p2).expect("smooth");
            let thrice = c.add_points(&twice, &p2).expect("smooth");
            let is_three = thrice.is_infinity();
            let q = forward_quartic(c, &p2).expect("affine");
            let flag = three_torsion_flag(&q);
            if is_three {
                order_three += 1;
            }
            if flag {
                flagged.insert(q.clone());
            }
            if flag != is_three {
                r.fail(pair_label(c, &p2), format!("3-torsion {is_three}"), format!("flag {flag}"));
            }
            if let Ok(class) = classify_pair(c, &p2) {
                if class.three_torsion != is_three {
                    r.fail(pair_label(c, &p2), format!("3-torsion {is_three}"), "classify_pair disagrees");
                }
            }
        }
        r.bump_by("order_three_points", order_three);
        r.bump_by("flagged_quartics", flagged.len() as u64);
        if 2 * flagged.len() as u64 != order_three {
            r.fail(format!("C=({c})"), format!("{} flagged quartics", order_three / 2), flagged.len());
        }
    })
}

/// Means and covariance over fully split halves, with halves found by
/// scanning points and doubling.
pub fn stats_sweep(p: u64) -> Result<SweepReport> {
    sweep_curves("stats", p, |c, r| {
        if !c.is_smooth() {
            return;
        }
        let pts = c.affine_points().expect("enumerable");
        let mut by_double: HashMap<CubicPoint, Vec<CubicPoint>> = HashMap::new();
        for p1 in &pts {
            by_double.entry(c.double_point(p1).expect("smooth")).or_default().push(p1.clone());
        }
        let mut doubles: Vec<_> = by_double.into_iter().collect();
        doubles.sort_by(|a, b| a.0.x().cmp(&b.0.x()).then(a.0.y().cmp(&b.0.y())));
        for (p2, hs) in doubles {
            let Some(p2a) = p2.affine() else { continue };
            if p2a.y().is_zero() || hs.len() != 4 {
                continue;
            }
            r.bump("fully_split");
            match statistics_identity_check(c, &hs) {
                Ok(rep) => {
                    if rep.sum_form_holds {
                        r.bump("sum_form_holds");
                    }
                    if !(rep.mean_matches && rep.difference_form_holds) {
                        r.fail(
                            pair_label(c, &p2),
                            format!("x2={} y2={}", p2a.x(), p2a.y()),
                            format!("mean x={} cov-mean y={}", rep.mean_x, rep.difference_form),
                        );
                    }
                }
                Err(e) => r.fail(pair_label(c, &p2), "a report", e),
            }
        }
    })
}

/// Division of the point at infinity on every curve.
pub fn homogeneous_sweep(p: u64) -> Result<SweepReport> {
    let k = field(p)?;
    let elems = k.enumerate()?;
    let mut line: Vec<(FieldValue, FieldValue)> = elems.iter().map(|x| (x.clone(), k.one())).collect();
    line.push((k.one(), k.zero()));
    sweep_curves("homogeneous", p, |c, r| {
        let h = forward_quartic_homogeneous(c, &CubicPoint::Infinity).expect("valid form");
        // Z * F_h evaluated directly, at every point of the projective line
        for (x, z) in &line {
            let direct = z * c.f_homogeneous(x, z);
            if h.eval(x, z) != direct {
                r.fail(format!("C=({c}) at ({x}:{z})"), direct, h.eval(x, z));
            }
        }
        // multiplicity of z = 0 in Q(1, z)
        let in_z = Poly::new(&k, h.coefficients().to_vec());
        let at_infinity = root_multiplicity(&in_z, &k.zero());
        if at_infinity != 1 || !h.d4().is_zero() || !h.d3().is_one() {
            r.fail(format!("C=({c})"), "simple root at (1:0)", format!("multiplicity {at_infinity} in {h}"));
        }
        let observed = singular_abscissa_by_enumeration(c);
        match classify_homogeneous(&h) {
            Ok(div) => {
                let expected = div.singularity.singular_abscissa().map(|s| {
                    let m = if matches!(div.singularity, SingularityType::Cusp { .. }) { 3 } else { 2 };
                    (s.clone(), m)
                });
                if div.curve != *c || expected != observed || div.singularity != c.singularity_type() {
                    r.fail(format!("C=({c})"), format!("{observed:?}"), format!("{:?}", div.singularity));
                }
                r.bump(div.singularity.tag());
            }
            Err(e) => r.fail(format!("C=({c})"), "curve read from Z*F_h", e),
        }
        for p2 in c.affine_points().expect("enumerable") {
            let hq = forward_quartic_homogeneous(c, &p2).expect("valid form");
            if Some(forward_quartic(c, &p2).expect("affine")) != hq.dehomogenize() {
                r.fail(pair_label(c, &p2), "affine patch agrees", hq);
            }
        }
    })
}
