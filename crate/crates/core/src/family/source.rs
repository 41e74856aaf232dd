use std::path::Path;

use serde_json::Value;

use super::{random_xi_table, Family, BUILTINS};
use crate::dsl::parse_series;
use crate::error::{Error, Result};
use crate::json::{series_from_json, table_from_json};
use crate::scalar::Scalar;
use crate::series::Series;
use crate::Rat;

/// Where a family comes from, before any truncation order is chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Builtin(String),
    /// Binomial family of a series expression in `y`.
    Binomial(String),
    /// Binomial family of a fixed series.
    BinomialSeries(Series<Rat>),
    Xi(Vec<Vec<Rat>>),
    Fns(Vec<Series<Rat>>),
    /// Seeded random `xi` table.
    Random {
        seed: u64,
        vanishing: bool,
    },
}

/// A family description: `builtin:<name>`, `binomial:<series>` or `file:<path>`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub label: String,
    pub source: Source,
    /// Size requested by a family file, if any.
    pub dim: Option<usize>,
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, rest) = text.split_once(':').ok_or_else(|| {
            Error::Invalid(format!(
                "family spec {text:?} needs a builtin:, binomial: or file: prefix"
            ))
        })?;
        match kind {
            "builtin" => {
                if !BUILTINS.contains(&rest) {
                    return Err(Error::UnknownFamily(rest.to_string()));
                }
                Ok(FamilySpec {
                    label: rest.to_string(),
                    source: Source::Builtin(rest.to_string()),
                    dim: None,
                })
            }
            "binomial" => {
                parse_series(rest)?;
                Ok(FamilySpec {
                    label: text.to_string(),
                    source: Source::Binomial(rest.to_string()),
                    dim: None,
                })
            }
            "file" => Self::from_file(rest),
            _ => Err(Error::Invalid(format!("unknown family kind {kind:?}"))),
        }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        let mut spec = Self::from_json(&v)?;
        spec.label = format!("file:{}", path.display());
        Ok(spec)
    }

    /// `{"kind": "xi"|"binomial"|"fns"|"builtin", "N": .., "data": ..}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Invalid("missing kind".into()))?;
        let dim = match v.get("N") {
            None => None,
            Some(n) => Some(
                n.as_u64()
                    .ok_or_else(|| Error::Invalid("N must be a natural number".into()))?
                    as usize,
            ),
        };
        let data = v
            .get("data")
            .ok_or_else(|| Error::Invalid("missing data".into()))?;
        let (label, source) = match kind {
            "builtin" => {
                let name = data
                    .as_str()
                    .ok_or_else(|| Error::Invalid("builtin data must be a name".into()))?;
                if !BUILTINS.contains(&name) {
                    return Err(Error::UnknownFamily(name.to_string()));
                }
                (name.to_string(), Source::Builtin(name.to_string()))
            }
            "binomial" => match data {
                Value::String(s) => {
                    parse_series(s)?;
                    (format!("binomial:{s}"), Source::Binomial(s.clone()))
                }
                other => (
                    "binomial".to_string(),
                    Source::BinomialSeries(series_from_json(other)?),
                ),
            },
            "xi" => ("xi".to_string(), Source::Xi(table_from_json(data)?)),
            "fns" => {
                let list = data
                    .as_array()
                    .ok_or_else(|| Error::Invalid("fns data must be an array".into()))?;
                (
                    "fns".to_string(),
                    Source::Fns(list.iter().map(series_from_json).collect::<Result<_>>()?),
                )
            }
            other => return Err(Error::Invalid(format!("unknown family kind {other:?}"))),
        };
        Ok(FamilySpec { label, source, dim })
    }

    pub fn random(seed: u64, vanishing: bool) -> Self {
        FamilySpec {
            label: format!("random:{seed}"),
            source: Source::Random { seed, vanishing },
            dim: None,
        }
    }

    /// Builds with tables through index `max` and operator dimension `dim`.
    /// Fixed tables shorter than that are used at the size they have.
    pub fn build<F: Scalar>(&self, max: usize, dim: usize) -> Result<Family<F>> {
        let conv = |r: &Rat| F::from_rational(r);
        let fam = match &self.source {
            Source::Builtin(name) => Family::builtin(name, max, dim)?,
            Source::Binomial(text) => {
                let f = parse_series(text)?.eval::<F>(max.max(1))?;
                Family::binomial(&self.label, &f, max, dim)?
            }
            Source::BinomialSeries(s) => {
                let m = max.min(s.order().max(0) as usize);
                Family::binomial(&self.label, &convert(s, conv), m, dim)?
            }
            Source::Xi(table) => {
                let rows: Vec<Vec<F>> = table
                    .iter()
                    .take(max + 1)
                    .map(|r| r.iter().map(conv).collect())
                    .collect();
                Family::from_xi(&self.label, &rows, dim)?
            }
            Source::Fns(list) => {
                let order = list.iter().map(|s| s.order()).min().unwrap_or(-1);
                if order < 0 {
                    return Err(Error::Invalid("empty series family".into()));
                }
                let m = max.min(list.len() - 1).min(order as usize);
                let fns: Vec<Series<F>> = list[..=m]
                    .iter()
                    .map(|s| convert(&s.truncate(m), conv))
                    .collect();
                Family::from_fns(&self.label, &fns, dim)?
            }
            Source::Random { seed, vanishing } => {
                Family::from_xi(&self.label, &random_xi_table(*seed, max, *vanishing), dim)?
            }
        };
        Ok(fam.with_label(&self.label))
    }
}

fn convert<F: Scalar>(s: &Series<Rat>, f: impl Fn(&Rat) -> F) -> Series<F> {
    Series::from_scalars(s.coeffs().iter().map(f).collect())
}
