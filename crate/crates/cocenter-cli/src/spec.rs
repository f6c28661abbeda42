//! The `--group` argument: a preset name or a TOML root-datum file.
//!
//! ```toml
//! preset = "GL3"            # or
//! cartan = [[2, -1], [-1, 2]]
//! lattice = "sc"            # "sc", "ad" or a square integer matrix
//! twist = "flip"            # optional
//! ```

use std::path::Path;

use affine_cocenter::{AffineWeyl, Error, LatticeSpec, Result, RootDatum};
use toml::{Table, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub datum: DatumSource,
    pub twist: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatumSource {
    Preset(String),
    Cartan { cartan: Vec<Vec<i64>>, lattice: LatticeSpec },
}

impl GroupSpec {
    /// A path to an existing file is read as TOML; anything else is a preset.
    pub fn from_arg(arg: &str) -> Result<Self> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::parse(0, format!("cannot read {arg}: {e}")))?;
            return Self::from_toml(&text);
        }
        if arg.ends_with(".toml") || arg.contains('/') {
            return Err(Error::parse(0, format!("no such spec file `{arg}`")));
        }
        Ok(GroupSpec { datum: DatumSource::Preset(arg.to_string()), twist: None })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let table: Table = text.parse().map_err(|e: toml::de::Error| {
            Error::parse(e.span().map_or(0, |s| s.start), e.message().to_string())
        })?;
        for key in table.keys() {
            if !["preset", "cartan", "lattice", "twist"].contains(&key.as_str()) {
                return Err(Error::parse(0, format!("unknown key `{key}`")));
            }
        }
        let twist = match table.get("twist") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(Error::parse(0, "`twist` must be a string")),
        };
        let datum = match (table.get("preset"), table.get("cartan")) {
            (Some(_), Some(_)) => return Err(Error::parse(0, "give either `preset` or `cartan`, not both")),
            (None, None) => return Err(Error::parse(0, "missing `preset` or `cartan`")),
            (Some(Value::String(p)), None) => {
                if table.contains_key("lattice") {
                    return Err(Error::parse(0, "`lattice` only applies to `cartan`"));
                }
                DatumSource::Preset(p.clone())
            }
            (Some(_), None) => return Err(Error::parse(0, "`preset` must be a string")),
            (None, Some(c)) => {
                let cartan = int_matrix(c, "cartan")?;
                let lattice = match table.get("lattice") {
                    None => LatticeSpec::SimplyConnected,
                    Some(Value::String(s)) => match s.as_str() {
                        "sc" => LatticeSpec::SimplyConnected,
                        "ad" => LatticeSpec::Adjoint,
                        other => return Err(Error::parse(0, format!("unknown lattice `{other}`"))),
                    },
                    Some(v) => LatticeSpec::Basis(int_matrix(v, "lattice")?),
                };
                DatumSource::Cartan { cartan, lattice }
            }
        };
        Ok(GroupSpec { datum, twist })
    }

    pub fn build(&self) -> Result<AffineWeyl> {
        let rd = match &self.datum {
            DatumSource::Preset(p) => RootDatum::preset(p)?,
            DatumSource::Cartan { cartan, lattice } => RootDatum::from_cartan(cartan, lattice)?,
        };
        AffineWeyl::new(rd)
    }
}

fn int_matrix(v: &Value, key: &str) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::parse(0, format!("`{key}` must be a matrix of integers"));
    let rows = v.as_array().ok_or_else(bad)?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_integer().ok_or_else(bad))
                .collect()
        })
        .collect()
}
