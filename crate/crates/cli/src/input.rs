//! Literal syntax shared by the verbs.

use halfpoint::{CubicPoint, FieldDescriptor, FieldValue, HomogeneousQuartic, MonicQuartic, WeierstrassCubic};

use crate::CliError;

pub fn field(s: &str) -> Result<FieldDescriptor, CliError> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("bad field descriptor {s:?}: {e}")))
}

pub fn values(k: &FieldDescriptor, s: &str, n: usize, what: &str) -> Result<Vec<FieldValue>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(CliError::Usage(format!(
            "{what} expects {n} comma-separated values, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| k.parse_value(p).map_err(|e| CliError::Usage(format!("{what}: {e}"))))
        .collect()
}

pub fn curve(k: &FieldDescriptor, s: &str) -> Result<WeierstrassCubic, CliError> {
    let mut v = values(k, s, 3, "--curve")?.into_iter();
    let (a, b, c) = (v.next().unwrap(), v.next().unwrap(), v.next().unwrap());
    Ok(WeierstrassCubic::new(a, b, c)?)
}

/// `inf` or `x,y`; an affine point must lie on the curve.
pub fn point(curve: &WeierstrassCubic, s: &str) -> Result<CubicPoint, CliError> {
    if s.trim() == "inf" {
        return Ok(CubicPoint::Infinity);
    }
    let mut v = values(curve.field(), s, 2, "--point")?.into_iter();
    Ok(curve.point(v.next().unwrap(), v.next().unwrap())?)
}

pub fn quartic(k: &FieldDescriptor, s: &str) -> Result<MonicQuartic, CliError> {
    let mut v = values(k, s, 4, "--quartic")?.into_iter();
    let mut next = || v.next().unwrap();
    Ok(MonicQuartic::new(next(), next(), next(), next())?)
}

pub fn hquartic(k: &FieldDescriptor, s: &str) -> Result<HomogeneousQuartic, CliError> {
    let v = values(k, s, 5, "homogeneous quartic")?;
    let coeffs: [FieldValue; 5] = v.try_into().expect("five values");
    Ok(HomogeneousQuartic::new(coeffs)?)
}

pub fn join(values: &[&FieldValue]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}
