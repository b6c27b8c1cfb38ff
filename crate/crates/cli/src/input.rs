//! Reading inputs and telling the three schemas apart.

use std::io::Read;
use std::path::Path;

use arroids::arrangement::{arroid_of, CurveArrangement};
use arroids::fan::build_arroid_fan;
use arroids::{Arroid, Error, Result, WeightedFan};
use serde_json::Value;

pub enum Input {
    Arroid(Arroid),
    Arrangement(CurveArrangement),
    Fan(WeightedFan),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Arroid(_) => "arroid",
            Input::Arrangement(_) => "arrangement",
            Input::Fan(_) => "fan",
        }
    }

    /// The validated arroid behind an arroid or arrangement input.
    pub fn arroid(&self) -> Result<Arroid> {
        match self {
            Input::Arroid(a) => {
                let report = a.validate();
                if report.ok() {
                    Ok(a.clone())
                } else {
                    Err(Error::ValidationFailed(Box::new(report)))
                }
            }
            Input::Arrangement(arr) => arroid_of(arr),
            Input::Fan(_) => Err(Error::InvalidInput("expected an arroid or an arrangement, got a fan".into())),
        }
    }

    pub fn arrangement(&self) -> Result<&CurveArrangement> {
        match self {
            Input::Arrangement(arr) => Ok(arr),
            other => Err(Error::InvalidInput(format!("expected an arrangement, got {}", other.kind()))),
        }
    }

    pub fn fan(&self) -> Result<WeightedFan> {
        match self {
            Input::Fan(f) => Ok(f.clone()),
            _ => build_arroid_fan(&self.arroid()?),
        }
    }
}

/// Reads a file, or stdin for `-`.
pub fn read(path: &Path) -> Result<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

/// Picks the schema from the top-level keys: `curves` or `records` for an
/// arrangement, `points` for an arroid, `rays` and `cones` for a fan.
pub fn detect(v: &Value) -> Result<Input> {
    let has = |k: &str| v.get(k).is_some();
    if has("curves") || has("records") {
        Ok(Input::Arrangement(CurveArrangement::from_json(v)?))
    } else if has("points") {
        Ok(Input::Arroid(Arroid::from_json(v)?))
    } else if has("rays") && has("cones") {
        Ok(Input::Fan(WeightedFan::from_json(v)?))
    } else {
        Err(Error::InvalidInput(
            "unrecognized input: expected an arroid, an arrangement or a fan".into(),
        ))
    }
}

pub fn load(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text)?;
    detect(&v)
}
