//! Argument loading. Every curve-like argument is a file path or the text itself.

use crate::CliError;
use lab_core::avenue::{CurveDescriptor, GeneralLasso};
use lab_core::flute::diagram::{curve_of, CrossingDiagram};
use lab_core::flute::{Carrier, Curve, LassoArc};
use lab_core::surface::{validate_spec, SurfaceSpec, ValidatedSpec};
use serde::de::DeserializeOwned;
use std::path::Path;

pub fn text(arg: &str) -> Result<String, CliError> {
    let p = Path::new(arg);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(&text(arg)?).map_err(|e| CliError::Usage(format!("{what} {arg}: {e}")))
}

pub enum AnyCurve {
    Flute(Curve),
    General(CurveDescriptor),
}

/// Crossing-diagram JSON, a word such as `U0 D2 U3`, or descriptor JSON.
pub fn any_curve(arg: &str) -> Result<AnyCurve, CliError> {
    let s = text(arg)?;
    let t = s.trim();
    if t.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(t).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?;
        if v.get("crossings").is_some() {
            let d = CrossingDiagram::from_json(t).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?;
            return curve_of(&d).map(AnyCurve::Flute).map_err(|e| CliError::Usage(format!("{arg}: {e}")));
        }
        return CurveDescriptor::from_json(t).map(AnyCurve::General).map_err(|e| CliError::Usage(format!("{arg}: {e}")));
    }
    if t.starts_with("[{") {
        return json::<Curve>(arg, "word").map(AnyCurve::Flute);
    }
    t.parse::<Curve>().map(AnyCurve::Flute).map_err(|e| CliError::Usage(format!("{arg}: {e}")))
}

pub fn flute_curve(arg: &str) -> Result<Curve, CliError> {
    match any_curve(arg)? {
        AnyCurve::Flute(c) => Ok(c),
        AnyCurve::General(_) => Err(CliError::Usage(format!("{arg}: expected a flute curve"))),
    }
}

pub fn descriptor(arg: &str) -> Result<CurveDescriptor, CliError> {
    match any_curve(arg)? {
        AnyCurve::General(d) => Ok(d),
        AnyCurve::Flute(_) => Err(CliError::Usage(format!("{arg}: expected a curve descriptor"))),
    }
}

pub fn spec(arg: &str) -> Result<SurfaceSpec, CliError> {
    SurfaceSpec::from_json(&text(arg)?).map_err(|e| CliError::Usage(format!("{arg}: {e}")))
}

pub fn valid_spec(arg: &str) -> Result<ValidatedSpec, CliError> {
    validate_spec(spec(arg)?).map_err(|e| CliError::Usage(format!("{arg}: {e}")))
}

pub fn arc(arg: &str) -> Result<LassoArc, CliError> {
    json(arg, "lasso arc")
}

pub fn general_lasso(arg: &str) -> Result<GeneralLasso, CliError> {
    json(arg, "lasso")
}

pub fn path_file(arg: &str) -> Result<serde_json::Value, CliError> {
    json(arg, "path")
}

/// `a:b`, punctures `a..=b`.
pub fn carrier(s: &str) -> Result<Carrier, String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a > b {
        return Err(format!("empty carrier {s}"));
    }
    Ok(Carrier::new(a, b))
}
