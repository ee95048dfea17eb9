//! JSON config and scenario files.
//!
//! Matrix cells are numbers or strings. Strings may be a fraction (`"1/3"`),
//! a decimal (`"0.5"`), `"gamma"` for the swept judgment, or `"1/gamma"` for
//! its mirrored cell. See `configs/` for complete examples.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use voi_core::ahp::{ComparisonMatrix, DEFAULT_CONSISTENCY_THRESHOLD};
use voi_core::model::{
    Application, ApplicationKind, Attribute, DecayProfile, GammaSlot, Point, Requirements,
    SourceKind, VoiConfig,
};
use voi_core::sim::{Generator, ScenarioConfig};

use crate::error::CliError;

/// A matrix cell as written in a file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ParsedCell {
    Value(f64),
    Gamma,
    InverseGamma,
}

/// Parses `"3"`, `"0.25"` or `"1/9"`.
pub fn parse_ratio(text: &str) -> Option<f64> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().ok()?;
            let den: f64 = den.trim().parse().ok()?;
            Some(num / den)
        }
        None => text.parse().ok(),
    }
}

impl Cell {
    fn parse(&self) -> Option<ParsedCell> {
        match self {
            Cell::Number(v) => Some(ParsedCell::Value(*v)),
            Cell::Text(t) => match t.trim() {
                "gamma" => Some(ParsedCell::Gamma),
                "1/gamma" => Some(ParsedCell::InverseGamma),
                other => parse_ratio(other).map(ParsedCell::Value),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApplicationFile {
    pub kind: ApplicationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub requirements: Option<Requirements>,
}

/// On-disk form of [`VoiConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoiConfigFile {
    pub application: ApplicationFile,
    pub attributes: Vec<Attribute>,
    pub sources: Vec<SourceKind>,
    pub attribute_matrix: Vec<Vec<Cell>>,
    /// One matrix over `sources` per attribute, keyed by attribute.
    pub conditional_matrices: BTreeMap<Attribute, Vec<Vec<Cell>>>,
    pub decay: DecayProfile,
    #[serde(default = "default_threshold")]
    pub consistency_threshold: f64,
    /// Gamma used by `check` when no `--gamma` is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Cell>,
}

fn default_threshold() -> f64 {
    DEFAULT_CONSISTENCY_THRESHOLD
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Field {
        field: field.into(),
        message: message.into(),
    }
}

fn plain_matrix(field: &str, cells: &[Vec<Cell>]) -> Result<ComparisonMatrix, CliError> {
    let rows = cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, cell)| match cell.parse() {
                    Some(ParsedCell::Value(v)) => Ok(v),
                    Some(_) => Err(field_error(
                        format!("{field}[{i}][{j}]"),
                        "gamma is only allowed in attribute_matrix",
                    )),
                    None => Err(field_error(
                        format!("{field}[{i}][{j}]"),
                        format!("cannot read {cell:?} as a number"),
                    )),
                })
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ComparisonMatrix::from_rows(&rows).map_err(|e| field_error(field, e.to_string()))
}

fn gamma_matrix(cells: &[Vec<Cell>]) -> Result<(ComparisonMatrix, Option<GammaSlot>), CliError> {
    const FIELD: &str = "attribute_matrix";
    let mut slot = None;
    let mut inverse = None;
    let mut rows = Vec::with_capacity(cells.len());
    for (i, row) in cells.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            let at = || format!("{FIELD}[{i}][{j}]");
            match cell.parse() {
                Some(ParsedCell::Value(v)) => out.push(v),
                Some(ParsedCell::Gamma) => {
                    if slot.replace(GammaSlot { row: i, col: j }).is_some() {
                        return Err(field_error(at(), "only one \"gamma\" cell is allowed"));
                    }
                    out.push(1.0);
                }
                Some(ParsedCell::InverseGamma) => {
                    if inverse.replace((i, j)).is_some() {
                        return Err(field_error(at(), "only one \"1/gamma\" cell is allowed"));
                    }
                    out.push(1.0);
                }
                None => {
                    return Err(field_error(
                        at(),
                        format!("cannot read {cell:?} as a number"),
                    ))
                }
            }
        }
        rows.push(out);
    }
    match (slot, inverse) {
        (None, None) => {}
        (Some(s), Some((r, c))) if s.row < s.col && (r, c) == (s.col, s.row) => {}
        (Some(s), _) if s.row >= s.col => {
            return Err(field_error(
                format!("{FIELD}[{}][{}]", s.row, s.col),
                "\"gamma\" must sit above the diagonal",
            ))
        }
        (Some(s), _) => {
            return Err(field_error(
                format!("{FIELD}[{}][{}]", s.col, s.row),
                "expected \"1/gamma\" mirroring the \"gamma\" cell",
            ))
        }
        (None, Some((r, c))) => {
            return Err(field_error(
                format!("{FIELD}[{r}][{c}]"),
                "\"1/gamma\" without a \"gamma\" cell",
            ))
        }
    }
    let matrix =
        ComparisonMatrix::from_rows(&rows).map_err(|e| field_error(FIELD, e.to_string()))?;
    Ok((matrix, slot))
}

impl VoiConfigFile {
    pub fn into_config(self) -> Result<VoiConfig, CliError> {
        let (attribute_matrix, gamma_slot) = gamma_matrix(&self.attribute_matrix)?;

        let mut conditional = self.conditional_matrices;
        let mut conditional_matrices = Vec::with_capacity(self.attributes.len());
        for attribute in &self.attributes {
            let name = attribute_name(*attribute);
            let cells = conditional.remove(attribute).ok_or_else(|| {
                field_error(
                    format!("conditional_matrices.{name}"),
                    "missing matrix for listed attribute",
                )
            })?;
            conditional_matrices.push(plain_matrix(
                &format!("conditional_matrices.{name}"),
                &cells,
            )?);
        }
        if let Some(extra) = conditional.keys().next() {
            return Err(field_error(
                format!("conditional_matrices.{}", attribute_name(*extra)),
                "attribute is not listed in `attributes`",
            ));
        }

        let mut application = Application::standard(self.application.kind);
        if let Some(requirements) = self.application.requirements {
            application.requirements = requirements;
        }

        let config = VoiConfig {
            application,
            attributes: self.attributes,
            sources: self.sources,
            attribute_matrix,
            gamma_slot,
            conditional_matrices,
            decay: self.decay,
            consistency_threshold: self.consistency_threshold,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn default_gamma(&self) -> Result<Option<f64>, CliError> {
        match &self.gamma {
            None => Ok(None),
            Some(cell) => match cell.parse() {
                Some(ParsedCell::Value(v)) => Ok(Some(v)),
                _ => Err(field_error(
                    "gamma",
                    format!("cannot read {cell:?} as a number"),
                )),
            },
        }
    }

    /// File form of an in-memory config. Gamma cells are written symbolically.
    pub fn from_config(config: &VoiConfig) -> Self {
        let cells = |m: &ComparisonMatrix| -> Vec<Vec<Cell>> {
            m.rows()
                .map(|r| r.iter().map(|v| Cell::Number(*v)).collect())
                .collect()
        };
        let mut attribute_matrix = cells(&config.attribute_matrix);
        if let Some(s) = config.gamma_slot {
            attribute_matrix[s.row][s.col] = Cell::Text("gamma".into());
            attribute_matrix[s.col][s.row] = Cell::Text("1/gamma".into());
        }
        Self {
            application: ApplicationFile {
                kind: config.application.kind,
                requirements: Some(config.application.requirements),
            },
            attributes: config.attributes.clone(),
            sources: config.sources.clone(),
            attribute_matrix,
            conditional_matrices: config
                .attributes
                .iter()
                .zip(&config.conditional_matrices)
                .map(|(a, m)| (*a, cells(m)))
                .collect(),
            decay: config.decay,
            consistency_threshold: config.consistency_threshold,
            gamma: None,
        }
    }
}

fn attribute_name(attribute: Attribute) -> String {
    serde_json::to_value(attribute)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_else(|| format!("{attribute:?}"))
}

/// Application config given inline or as a path relative to the scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VoiConfigRef {
    Path(PathBuf),
    Inline(Box<VoiConfigFile>),
}

/// On-disk form of [`ScenarioConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub duration_slots: u64,
    pub slot_ms: f64,
    pub channel_bits_per_slot: u64,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub receiver_position: Point,
    pub voi_config: VoiConfigRef,
    pub gamma: Cell,
    #[serde(default)]
    pub rng_seed: u64,
}

impl ScenarioFile {
    /// Resolves the application config relative to `base_dir`.
    pub fn into_config(self, base_dir: &Path) -> Result<ScenarioConfig, CliError> {
        let voi_config = match self.voi_config {
            VoiConfigRef::Inline(file) => file.into_config()?,
            VoiConfigRef::Path(path) => load_voi_config(&base_dir.join(path))?.0,
        };
        let gamma = match self.gamma.parse() {
            Some(ParsedCell::Value(v)) => v,
            _ => {
                return Err(field_error(
                    "gamma",
                    format!("cannot read {:?} as a number", self.gamma),
                ))
            }
        };
        let config = ScenarioConfig {
            duration_slots: self.duration_slots,
            slot_ms: self.slot_ms,
            channel_bits_per_slot: self.channel_bits_per_slot,
            generators: self.generators,
            receiver_position: self.receiver_position,
            voi_config,
            gamma,
            rng_seed: self.rng_seed,
        };
        config.validate()?;
        Ok(config)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

/// Loads an application config and its optional default gamma.
pub fn load_voi_config(path: &Path) -> Result<(VoiConfig, Option<f64>), CliError> {
    let file: VoiConfigFile = parse(path, &read(path)?)?;
    let gamma = file.default_gamma()?;
    Ok((file.into_config()?, gamma))
}

pub fn load_scenario(path: &Path) -> Result<ScenarioConfig, CliError> {
    let file: ScenarioFile = parse(path, &read(path)?)?;
    file.into_config(path.parent().unwrap_or(Path::new(".")))
}
