use halfpoint::galois::{BiquadraticExtension, CyclicQuarticExtension, ExtensionElement, GaloisQuartic};
use halfpoint::oracle::{self, SweepReport, DEFAULT_MAX_PRIME};
use halfpoint::{
    arises_on_elliptic_curve, classify_homogeneous, classify_pair, classify_quartic, forward_quartic,
    forward_quartic_homogeneous, gate_accepts, halves, reconstruct, rescale_to_square, statistics_identity_check,
    three_torsion_flag, AffineMap, CubicPoint, DivisionOutcome, FieldDescriptor, FieldValue, GeometricClass,
    HomogeneousQuartic, MonicQuartic, RepeatedRoot, RootProfile, SignConvention, SingularityType, WeierstrassCubic,
};
use serde_json::{json, Map, Value};

use crate::args::{
    ClassifyArgs, Cli, Convention, DivideArgs, ExtensionType, GaloisArgs, OracleArgs, PairArgs, QuarticArgs,
    QuarticInput, ReconstructArgs, Sweep, Verb,
};
use crate::{input, render_text, CliError, Response, MAX_PRIME_ENV};

pub fn dispatch(cli: &Cli) -> Result<Response, CliError> {
    let k = input::field(&cli.field)?;
    let (verb, body) = match &cli.verb {
        Verb::Divide(a) => ("divide", divide(&k, a)?),
        Verb::Reconstruct(a) => ("reconstruct", reconstruct_verb(&k, a)?),
        Verb::Classify(a) => ("classify", classify(&k, a)?),
        Verb::Halves(a) => ("halves", halves_verb(&k, a)?),
        Verb::Invariants(a) => ("invariants", invariants(&k, a)?),
        Verb::Rescale(a) => ("rescale", rescale(&k, a)?),
        Verb::Galois(a) => ("galois", galois(&k, a)?),
        Verb::Oracle(a) => return oracle_verb(a),
        Verb::StatsCheck(a) => ("stats-check", stats_check(&k, a)?),
    };
    let (body, discrepancy) = body;
    let mut doc = Map::new();
    doc.insert("verb".into(), json!(verb));
    doc.insert("field".into(), json!(k.to_string()));
    doc.extend(body);
    let json = Value::Object(doc);
    Ok(Response {
        text: render_text(&json),
        json,
        discrepancy,
    })
}

type Body = (Map<String, Value>, bool);

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

fn s(v: &FieldValue) -> Value {
    Value::String(v.to_string())
}

fn curve_json(c: &WeierstrassCubic) -> Value {
    json!(input::join(&[c.a(), c.b(), c.c()]))
}

fn point_json(p: &CubicPoint) -> Value {
    json!(p.to_string())
}

fn quartic_json(q: &MonicQuartic) -> Value {
    let [d3, d2, d1, d0] = q.coefficients();
    json!({ "coefficients": input::join(&[d3, d2, d1, d0]), "text": q.to_poly().to_string() })
}

fn hquartic_json(q: &HomogeneousQuartic) -> Value {
    let c: Vec<&FieldValue> = q.coefficients().iter().collect();
    json!({ "coefficients": input::join(&c), "text": q.to_string() })
}

fn invariants_json(q: &MonicQuartic) -> Value {
    let e = q.invariant_e();
    json!({ "a_q": s(&q.invariant_a()), "e_q": s(&e), "minus_e_square": (-&e).is_square() })
}

fn profile_json(p: &RootProfile) -> Value {
    let repeated: Vec<Value> = p
        .repeated
        .iter()
        .map(|r| match r {
            RepeatedRoot::InField { root, multiplicity } => {
                json!({ "root": s(root), "multiplicity": multiplicity })
            }
            RepeatedRoot::ConjugatePair { trace, norm, multiplicity } => {
                json!({ "trace": s(trace), "norm": s(norm), "multiplicity": multiplicity })
            }
        })
        .collect();
    json!({
        "partition": p.partition.to_string(),
        "repeated": repeated,
        "repeated_roots_in_field": p.repeated_roots_rational(),
    })
}

fn singularity_json(t: &SingularityType) -> Value {
    match t {
        SingularityType::Smooth => json!({ "type": t.tag() }),
        SingularityType::Node { s: sa, t: ta } => json!({ "type": t.tag(), "s": s(sa), "t": s(ta) }),
        SingularityType::Cusp { s: sa } => json!({ "type": t.tag(), "s": s(sa) }),
    }
}

fn class_json(c: &GeometricClass) -> Value {
    json!({ "geometry": c.geometry.tag(), "three_torsion": c.three_torsion })
}

fn affine_json(m: &AffineMap) -> Value {
    json!({ "slope": s(&m.slope), "intercept": s(&m.intercept) })
}

fn divide(k: &FieldDescriptor, a: &DivideArgs) -> Result<Body, CliError> {
    let curve = input::curve(k, &a.pair.curve)?;
    let p = input::point(&curve, &a.pair.point)?;
    let mut out = obj(json!({ "curve": curve_json(&curve), "point": point_json(&p) }));
    if a.homogeneous || p.is_infinity() {
        let h = forward_quartic_homogeneous(&curve, &p)?;
        out.insert("outcome".into(), json!("HOMOGENEOUS_QUARTIC"));
        out.insert("hquartic".into(), hquartic_json(&h));
        return Ok((out, false));
    }
    let q = forward_quartic(&curve, &p)?;
    out.insert("outcome".into(), json!("QUARTIC"));
    out.insert("quartic".into(), quartic_json(&q));
    out.insert("invariants".into(), invariants_json(&q));
    out.insert("profile".into(), profile_json(&q.multiplicity_profile()));
    if let Ok(class) = classify_pair(&curve, &p) {
        out.insert("class".into(), class_json(&class));
    }
    Ok((out, false))
}

enum QuarticForm {
    Affine(MonicQuartic),
    Homogeneous(HomogeneousQuartic),
}

/// A homogeneous form with `d4 != 0` is read as its affine quartic.
fn read_quartic(k: &FieldDescriptor, i: &QuarticInput) -> Result<QuarticForm, CliError> {
    let h = match (&i.quartic, &i.hquartic) {
        (Some(q), None) if !i.homogeneous => return Ok(QuarticForm::Affine(input::quartic(k, q)?)),
        (Some(q), None) | (None, Some(q)) => input::hquartic(k, q)?,
        _ => return Err(CliError::Usage("give exactly one of --quartic or --hquartic".into())),
    };
    Ok(match h.dehomogenize() {
        Some(q) if !h.d4().is_zero() => QuarticForm::Affine(q),
        _ => QuarticForm::Homogeneous(h),
    })
}

fn infinity_body(h: &HomogeneousQuartic) -> Result<Map<String, Value>, CliError> {
    let d = classify_homogeneous(h)?;
    Ok(obj(json!({
        "outcome": "POINT_AT_INFINITY",
        "hquartic": hquartic_json(h),
        "curve": curve_json(&d.curve),
        "point": "inf",
        "singularity": singularity_json(&d.singularity),
    })))
}

fn reconstruct_verb(k: &FieldDescriptor, a: &ReconstructArgs) -> Result<Body, CliError> {
    let q = match read_quartic(k, &a.input)? {
        QuarticForm::Affine(q) => q,
        QuarticForm::Homogeneous(h) => return Ok((infinity_body(&h)?, false)),
    };
    let outcome = reconstruct(&q);
    let mut out = obj(json!({
        "outcome": outcome.tag(),
        "quartic": quartic_json(&q),
        "invariants": invariants_json(&q),
    }));
    let mut gate = Map::new();
    for (conv, name) in [(Convention::MinusE, SignConvention::MinusE), (Convention::PlusE, SignConvention::PlusE)] {
        if a.sign_convention == conv || a.sign_convention == Convention::Both {
            gate.insert(name.name().into(), json!(gate_accepts(&q, name)));
        }
    }
    out.insert("gate".into(), Value::Object(gate));
    match &outcome {
        DivisionOutcome::UniquePair {
            curve,
            x2,
            y2,
            singularity,
        } => {
            let points = outcome.points().expect("unique pair");
            out.insert("curve".into(), curve_json(curve));
            out.insert("x2".into(), s(x2));
            out.insert("y2".into(), json!([s(&y2[0]), s(&y2[1])]));
            out.insert("points".into(), json!([point_json(&points[0]), point_json(&points[1])]));
            out.insert("singularity".into(), singularity_json(singularity));
        }
        DivisionOutcome::NeedsExtension { curve, x2, minus_e } => {
            out.insert("curve".into(), curve_json(curve));
            out.insert("x2".into(), s(x2));
            out.insert("y2_squared".into(), s(&(minus_e / &k.from_i64(64))));
            out.insert("singularity".into(), singularity_json(&curve.singularity_type()));
        }
        DivisionOutcome::Family(f) => {
            out.insert(
                "family".into(),
                json!({
                    "x2": s(&f.x2),
                    "b_of_a": affine_json(&f.b_of_a),
                    "c_of_a": affine_json(&f.c_of_a),
                    "smooth_members_exist": f.smooth_members_exist,
                }),
            );
            out.insert("points".into(), json!([format!("{},0", f.x2)]));
        }
        DivisionOutcome::NotADivision { .. } => {}
    }
    out.insert("arises_on_elliptic_curve".into(), json!(arises_on_elliptic_curve(&q)));
    Ok((out, false))
}

fn classify(k: &FieldDescriptor, a: &ClassifyArgs) -> Result<Body, CliError> {
    let (q, class) = match (&a.curve, &a.point) {
        (Some(c), Some(p)) => {
            let curve = input::curve(k, c)?;
            let p = input::point(&curve, p)?;
            if p.is_infinity() {
                let h = forward_quartic_homogeneous(&curve, &p)?;
                return Ok((infinity_body(&h)?, false));
            }
            (forward_quartic(&curve, &p)?, classify_pair(&curve, &p)?)
        }
        _ => match read_quartic(k, &a.input)? {
            QuarticForm::Affine(q) => {
                let class = classify_quartic(&q)?;
                (q, class)
            }
            QuarticForm::Homogeneous(h) => return Ok((infinity_body(&h)?, false)),
        },
    };
    let out = obj(json!({
        "outcome": "CLASSIFIED",
        "quartic": quartic_json(&q),
        "invariants": invariants_json(&q),
        "profile": profile_json(&q.multiplicity_profile()),
        "class": class_json(&class),
    }));
    Ok((out, false))
}

fn halves_verb(k: &FieldDescriptor, a: &PairArgs) -> Result<Body, CliError> {
    let curve = input::curve(k, &a.curve)?;
    let p = input::point(&curve, &a.point)?;
    let h = halves(&curve, &p)?;
    let points: Vec<Value> = h.points.iter().map(point_json).collect();
    let out = obj(json!({
        "outcome": "HALVES",
        "curve": curve_json(&curve),
        "point": point_json(&p),
        "halves": points,
        "off_field": h.off_field,
    }));
    Ok((out, false))
}

fn invariants(k: &FieldDescriptor, a: &QuarticArgs) -> Result<Body, CliError> {
    let q = input::quartic(k, &a.quartic)?;
    let out = obj(json!({
        "outcome": "INVARIANTS",
        "quartic": quartic_json(&q),
        "invariants": invariants_json(&q),
        "profile": profile_json(&q.multiplicity_profile()),
        "three_torsion": three_torsion_flag(&q),
    }));
    Ok((out, false))
}

fn rescale(k: &FieldDescriptor, a: &QuarticArgs) -> Result<Body, CliError> {
    let q = input::quartic(k, &a.quartic)?;
    let (eps, scaled) = rescale_to_square(&q)?;
    let e = scaled.invariant_e();
    let out = obj(json!({
        "outcome": "RESCALED",
        "quartic": quartic_json(&q),
        "epsilon": s(&eps),
        "rescaled": quartic_json(&scaled),
        "e_rescaled": s(&e),
        "e_rescaled_is_square": e.is_square(),
    }));
    Ok((out, false))
}

fn galois(k: &FieldDescriptor, a: &GaloisArgs) -> Result<Body, CliError> {
    match a.kind {
        ExtensionType::Biquadratic => {
            let mut p = input::values(k, &a.params, 2, "--params")?.into_iter();
            let ext = BiquadraticExtension::new(p.next().unwrap(), p.next().unwrap())?;
            galois_body(k, &ext, "biquadratic", a)
        }
        ExtensionType::Cyclic => {
            let p = input::values(k, &a.params, 1, "--params")?;
            let ext = CyclicQuarticExtension::new(p[0].clone())?;
            galois_body(k, &ext, "cyclic", a)
        }
    }
}

fn galois_body<G: GaloisQuartic>(k: &FieldDescriptor, ext: &G, kind: &str, a: &GaloisArgs) -> Result<Body, CliError> {
    let element = match &a.element {
        Some(e) => {
            let v = input::values(k, e, 4, "--element")?;
            ExtensionElement(v.try_into().expect("four values"))
        }
        None => ext.find_good_primitive_element()?,
    };
    let orbit: Vec<Value> = ext.galois_orbit(&element).iter().map(|g| json!(g.to_string())).collect();
    let product = ext.orbit_product(&element)?;
    let e_product = product.invariant_e();
    let e_closed = ext.e_closed_form(&element);
    let out = obj(json!({
        "outcome": "GALOIS",
        "type": kind,
        "params": a.params,
        "element": element.to_string(),
        "orbit": orbit,
        "primitive": ext.is_primitive(&element),
        "irreducible": ext.orbit_product_is_irreducible(&element),
        "orbit_product": quartic_json(&product),
        "e_orbit_product": s(&e_product),
        "e_closed_form": s(&e_closed),
        "routes_agree": e_product == e_closed,
    }));
    Ok((out, e_product != e_closed))
}

fn stats_check(k: &FieldDescriptor, a: &PairArgs) -> Result<Body, CliError> {
    let curve = input::curve(k, &a.curve)?;
    let p = input::point(&curve, &a.point)?;
    let h = halves(&curve, &p)?;
    let r = statistics_identity_check(&curve, &h.points)?;
    let pts: Vec<Value> = h.points.iter().map(point_json).collect();
    let slopes: Vec<Value> = r.slopes.iter().map(s).collect();
    let out = obj(json!({
        "outcome": "STATISTICS",
        "curve": curve_json(&curve),
        "point": point_json(&p),
        "halves": pts,
        "slopes": slopes,
        "mean_x": s(&r.mean_x),
        "mean_y": s(&r.mean_y),
        "covariance": s(&r.covariance),
        "cov_minus_mean_y": s(&r.difference_form),
        "mean_y_plus_cov": s(&r.sum_form),
        "mean_x_matches": r.mean_matches,
        "cov_minus_mean_y_matches": r.difference_form_holds,
        "mean_y_plus_cov_matches": r.sum_form_holds,
    }));
    Ok((out, !(r.mean_matches && r.difference_form_holds)))
}

fn max_prime() -> Result<u64, CliError> {
    match std::env::var(MAX_PRIME_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_PRIME_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_MAX_PRIME),
    }
}

fn report_json(r: &SweepReport) -> Value {
    let discrepancies: Vec<Value> = r
        .discrepancies
        .iter()
        .map(|d| json!({ "input": d.input, "expected": d.expected, "observed": d.observed }))
        .collect();
    json!({
        "name": r.name,
        "prime": r.prime,
        "passed": r.passed(),
        "counts": r.counts,
        "discrepancies": discrepancies,
    })
}

// discrepancy listings are capped in text mode; JSON carries all of them
const TEXT_DISCREPANCIES: usize = 10;

fn oracle_verb(a: &OracleArgs) -> Result<Response, CliError> {
    let bound = max_prime()?;
    if a.prime > bound {
        return Err(CliError::Precondition(format!(
            "prime {} exceeds the oracle bound {bound}; set {MAX_PRIME_ENV} to raise it",
            a.prime
        )));
    }
    let p = a.prime;
    // (report, decides the exit status)
    let reports: Vec<(SweepReport, bool)> = match a.sweep {
        Sweep::Gate => {
            let g = oracle::gate_sweep(p)?;
            let mut out = Vec::new();
            if a.sign_convention != Convention::PlusE {
                out.push((g.minus_e, a.sign_convention == Convention::MinusE));
            }
            if a.sign_convention != Convention::MinusE {
                out.push((g.plus_e, a.sign_convention == Convention::PlusE));
            }
            out
        }
        Sweep::Classify => vec![(oracle::classification_sweep(p)?, true)],
        Sweep::Torsion => vec![(oracle::torsion_sweep(p)?, true)],
        Sweep::Stats => vec![(oracle::stats_sweep(p)?, true)],
        Sweep::Halves => vec![(oracle::halves_sweep(p)?, true)],
        Sweep::Roundtrip => vec![(oracle::roundtrip_sweep(p)?, true)],
        Sweep::Homogeneous => vec![(oracle::homogeneous_sweep(p)?, true)],
    };
    let discrepancy = reports.iter().any(|(r, gating)| *gating && !r.passed());
    let json = json!({
        "verb": "oracle",
        "field": format!("fp:{p}"),
        "outcome": if discrepancy { "DISCREPANCY" } else { "OK" },
        "reports": reports.iter().map(|(r, _)| report_json(r)).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for (r, _) in &reports {
        text.push_str(&format!("{r}\n"));
        for d in r.discrepancies.iter().take(TEXT_DISCREPANCIES) {
            text.push_str(&format!("  {d}\n"));
        }
        if r.discrepancies.len() > TEXT_DISCREPANCIES {
            text.push_str(&format!("  ... {} more\n", r.discrepancies.len() - TEXT_DISCREPANCIES));
        }
    }
    Ok(Response {
        json,
        text,
        discrepancy,
    })
}
