//! Vehicular domain model and value assessment.
//!
//! An application config ([`VoiConfig`]) carries an attribute comparison matrix,
//! optionally parameterized by a single judgment `gamma`, and one comparison
//! matrix per attribute over the information sources in use. [`assess`]
//! turns these into a score per source; [`effective_voi`] decays a score with
//! message age, receiver distance and data quality.

use alloc::format;
use alloc::vec::Vec;

use crate::ahp::{
    self, ComparisonMatrix, ConsistencyReport, WeightVector, DEFAULT_CONSISTENCY_THRESHOLD,
    DEFAULT_MAX_ITER, DEFAULT_TOLERANCE, SAATY_MAX, SAATY_MIN,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ApplicationKind {
    Infotainment,
    Safety,
    CooperativePerception,
    Platooning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ThroughputClass {
    Low,
    Medium,
    High,
}

/// Service requirements of an application. Informational only; nothing in the
/// assessment or the simulator reads them.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Requirements {
    pub max_latency_ms: f64,
    pub min_reliability: f64,
    pub throughput: ThroughputClass,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Application {
    pub kind: ApplicationKind,
    pub requirements: Requirements,
}

impl Application {
    /// Typical requirements for each application class.
    pub fn standard(kind: ApplicationKind) -> Self {
        let requirements = match kind {
            ApplicationKind::Infotainment => Requirements {
                max_latency_ms: 100.0,
                min_reliability: 0.99,
                throughput: ThroughputClass::High,
            },
            ApplicationKind::Safety => Requirements {
                max_latency_ms: 10.0,
                min_reliability: 0.9999,
                throughput: ThroughputClass::Low,
            },
            ApplicationKind::CooperativePerception => Requirements {
                max_latency_ms: 100.0,
                min_reliability: 0.99,
                throughput: ThroughputClass::High,
            },
            ApplicationKind::Platooning => Requirements {
                max_latency_ms: 10.0,
                min_reliability: 0.9999,
                throughput: ThroughputClass::Medium,
            },
        };
        Self { kind, requirements }
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.requirements;
        if !(r.max_latency_ms > 0.0 && r.max_latency_ms.is_finite()) {
            return Err(Error::Domain(format!(
                "max latency must be positive, got {}",
                r.max_latency_ms
            )));
        }
        if !(r.min_reliability > 0.0 && r.min_reliability <= 1.0) {
            return Err(Error::Domain(format!(
                "reliability must lie in (0, 1], got {}",
                r.min_reliability
            )));
        }
        Ok(())
    }
}

/// Class of information a vehicle can collect and share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SourceKind {
    /// Perception of the surroundings: camera, lidar, radar.
    Surrounding,
    /// Own position, speed and heading.
    Position,
    Traffic,
    Environmental,
    Historical,
}

impl SourceKind {
    pub const ALL: [SourceKind; 5] = [
        SourceKind::Surrounding,
        SourceKind::Position,
        SourceKind::Traffic,
        SourceKind::Environmental,
        SourceKind::Historical,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            SourceKind::Surrounding => "surrounding",
            SourceKind::Position => "position",
            SourceKind::Traffic => "traffic",
            SourceKind::Environmental => "environmental",
            SourceKind::Historical => "historical",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl core::fmt::Display for SourceKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Assessment criterion.
///
/// Only time, space and quality have a decay model; the rest can still be
/// used as comparison criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Attribute {
    TimeDependency,
    SpaceDependency,
    InformationQuality,
    Urgency,
    Generalizability,
    Novelty,
    Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Annotation attached to every generated piece of information.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Metadata {
    pub source: SourceKind,
    /// Generation time, ms.
    pub generated_at: f64,
    /// Where the data was produced, m.
    pub origin_position: Point,
    pub size_bits: u64,
    /// Data quality in `[0, 1]`.
    pub quality: f64,
    pub urgency_level: u8,
    pub hop_count: u32,
}

impl Metadata {
    pub fn validate(&self) -> Result<()> {
        if self.size_bits == 0 {
            return Err(Error::Domain("message size must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.quality) {
            return Err(Error::Domain(format!(
                "quality must lie in [0, 1], got {}",
                self.quality
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SpaceShape {
    /// Value falls linearly with distance and vanishes at the radius.
    NearPreferred,
    /// Value grows linearly with distance and saturates at the radius.
    FarPreferred,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecayProfile {
    /// Age after which the value has halved, ms.
    pub time_half_life_ms: f64,
    /// Spatial horizon, m.
    pub space_radius_m: f64,
    pub space_shape: SpaceShape,
}

impl DecayProfile {
    pub fn validate(&self) -> Result<()> {
        if !(self.time_half_life_ms > 0.0 && self.time_half_life_ms.is_finite()) {
            return Err(Error::Domain(format!(
                "time half-life must be positive, got {}",
                self.time_half_life_ms
            )));
        }
        if !(self.space_radius_m > 0.0 && self.space_radius_m.is_finite()) {
            return Err(Error::Domain(format!(
                "space radius must be positive, got {}",
                self.space_radius_m
            )));
        }
        Ok(())
    }

    /// `2^(-age / half_life)`.
    pub fn time_factor(&self, age_ms: f64) -> f64 {
        libm::exp2(-age_ms / self.time_half_life_ms)
    }

    pub fn space_factor(&self, distance_m: f64) -> f64 {
        let ratio = distance_m / self.space_radius_m;
        match self.space_shape {
            SpaceShape::NearPreferred => (1.0 - ratio).max(0.0),
            SpaceShape::FarPreferred => ratio.min(1.0),
        }
    }
}

/// Above-diagonal cell of the attribute matrix that holds `gamma`.
/// The mirrored cell holds `1 / gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GammaSlot {
    pub row: usize,
    pub col: usize,
}

/// Assessment setup for one application.
#[derive(Debug, Clone, PartialEq)]
pub struct VoiConfig {
    pub application: Application,
    /// Criteria, in attribute-matrix order.
    pub attributes: Vec<Attribute>,
    /// Information sources, in conditional-matrix order.
    pub sources: Vec<SourceKind>,
    /// Attribute judgments. Cells covered by `gamma_slot` hold a placeholder
    /// and are overwritten by [`instantiate_matrix`].
    pub attribute_matrix: ComparisonMatrix,
    pub gamma_slot: Option<GammaSlot>,
    /// One matrix over `sources` per entry of `attributes`.
    pub conditional_matrices: Vec<ComparisonMatrix>,
    pub decay: DecayProfile,
    pub consistency_threshold: f64,
}

impl VoiConfig {
    /// Safety application over time, space and quality with surrounding and
    /// position data. `gamma` sits at (space, quality).
    ///
    /// Conditionals: time favors position 3:1, space is neutral, quality
    /// favors surrounding 5:1.
    pub fn safety_default() -> Self {
        let attribute_matrix =
            ComparisonMatrix::from_rows(&[[1.0, 1.0, 3.0], [1.0, 1.0, 1.0], [1.0 / 3.0, 1.0, 1.0]])
                .expect("3x3 literal");
        let pair =
            |a: f64| ComparisonMatrix::from_rows(&[[1.0, a], [1.0 / a, 1.0]]).expect("2x2 literal");
        Self {
            application: Application::standard(ApplicationKind::Safety),
            attributes: alloc::vec![
                Attribute::TimeDependency,
                Attribute::SpaceDependency,
                Attribute::InformationQuality,
            ],
            sources: alloc::vec![SourceKind::Surrounding, SourceKind::Position],
            attribute_matrix,
            gamma_slot: Some(GammaSlot { row: 1, col: 2 }),
            conditional_matrices: alloc::vec![pair(1.0 / 3.0), pair(1.0), pair(5.0)],
            decay: DecayProfile {
                time_half_life_ms: 100.0,
                space_radius_m: 300.0,
                space_shape: SpaceShape::NearPreferred,
            },
            consistency_threshold: DEFAULT_CONSISTENCY_THRESHOLD,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.application.validate()?;
        self.decay.validate()?;

        let a = self.attributes.len();
        let s = self.sources.len();
        if a < 2 {
            return Err(Error::Config(format!(
                "need at least 2 attributes, got {a}"
            )));
        }
        if s < 2 {
            return Err(Error::Config(format!("need at least 2 sources, got {s}")));
        }
        if let Some(dup) = first_duplicate(&self.attributes) {
            return Err(Error::Config(format!("attribute {dup:?} listed twice")));
        }
        if let Some(dup) = first_duplicate(&self.sources) {
            return Err(Error::Config(format!("source {dup} listed twice")));
        }
        if self.attribute_matrix.dim() != a {
            return Err(Error::Config(format!(
                "attribute matrix is {0}x{0} but {a} attributes are listed",
                self.attribute_matrix.dim()
            )));
        }
        if let Some(slot) = self.gamma_slot {
            if slot.row >= slot.col || slot.col >= a {
                return Err(Error::Config(format!(
                    "gamma slot ({}, {}) must be an above-diagonal cell of a {a}x{a} matrix",
                    slot.row, slot.col
                )));
            }
        }
        if self.conditional_matrices.len() != a {
            return Err(Error::Config(format!(
                "{} conditional matrices for {a} attributes",
                self.conditional_matrices.len()
            )));
        }
        for (attribute, m) in self.attributes.iter().zip(&self.conditional_matrices) {
            if m.dim() != s {
                return Err(Error::Config(format!(
                    "conditional matrix for {attribute:?} is {0}x{0} but {s} sources are listed",
                    m.dim()
                )));
            }
            ahp::validate(m)?;
        }
        if !(self.consistency_threshold >= 0.0 && self.consistency_threshold.is_finite()) {
            return Err(Error::Config(format!(
                "consistency threshold must be non-negative, got {}",
                self.consistency_threshold
            )));
        }
        ahp::validate(&self.matrix_with_placeholder())
    }

    /// Attribute matrix with `1` in the gamma cells.
    fn matrix_with_placeholder(&self) -> ComparisonMatrix {
        let mut m = self.attribute_matrix.clone();
        if let Some(slot) = self.gamma_slot {
            m.set(slot.row, slot.col, 1.0);
            m.set(slot.col, slot.row, 1.0);
        }
        m
    }

    /// Position of `source` in `sources`.
    pub fn source_position(&self, source: SourceKind) -> Option<usize> {
        self.sources.iter().position(|s| *s == source)
    }
}

fn first_duplicate<T: PartialEq + Copy>(items: &[T]) -> Option<T> {
    items
        .iter()
        .enumerate()
        .find(|(i, x)| items[..*i].contains(x))
        .map(|(_, x)| *x)
}

pub fn check_gamma(gamma: f64) -> Result<()> {
    if (SAATY_MIN..=SAATY_MAX).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "gamma must lie in [1/9, 9], got {gamma}"
        )))
    }
}

/// Attribute matrix with `gamma` in its slot and `1 / gamma` mirrored.
pub fn instantiate_matrix(config: &VoiConfig, gamma: f64) -> Result<ComparisonMatrix> {
    check_gamma(gamma)?;
    let slot = config
        .gamma_slot
        .ok_or_else(|| Error::Config("attribute matrix has no gamma slot".into()))?;
    if slot.row >= slot.col || slot.col >= config.attribute_matrix.dim() {
        return Err(Error::Config(format!(
            "gamma slot ({}, {}) is not an above-diagonal cell",
            slot.row, slot.col
        )));
    }
    let mut m = config.attribute_matrix.clone();
    m.set(slot.row, slot.col, gamma);
    m.set(slot.col, slot.row, 1.0 / gamma);
    ahp::validate(&m)?;
    Ok(m)
}

/// Result of the three-step assessment.
#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    /// One score per entry of `VoiConfig::sources`; sums to 1.
    pub scores: WeightVector,
    /// Consistency of the attribute matrix.
    pub report: ConsistencyReport,
    pub attribute_weights: WeightVector,
    /// Source weights under each attribute, in attribute order.
    pub conditional_weights: Vec<WeightVector>,
}

impl Assessment {
    pub fn score_of(&self, config: &VoiConfig, source: SourceKind) -> Option<f64> {
        config.source_position(source).map(|i| self.scores[i])
    }
}

/// Attribute weights from the (instantiated) attribute matrix, source weights
/// per attribute, and their synthesis into one score per source.
///
/// Without a gamma slot the attribute matrix is used as is and `gamma` is
/// ignored.
pub fn assess(config: &VoiConfig, gamma: f64) -> Result<Assessment> {
    config.validate()?;
    let matrix = if config.gamma_slot.is_some() {
        instantiate_matrix(config, gamma)?
    } else {
        config.attribute_matrix.clone()
    };

    let attribute = ahp::principal_eigenvector(&matrix, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?;
    let report = ahp::consistency_from_eigen(
        matrix.dim(),
        attribute.lambda_max,
        config.consistency_threshold,
    )?;

    let conditional_weights = config
        .conditional_matrices
        .iter()
        .map(|m| {
            ahp::principal_eigenvector(m, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).map(|e| e.weights)
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<&[f64]> = conditional_weights.iter().map(|w| w.as_slice()).collect();
    let scores = ahp::synthesize(&attribute.weights, &rows)?;

    Ok(Assessment {
        scores,
        report,
        attribute_weights: attribute.weights,
        conditional_weights,
    })
}

/// `base * 2^(-age/half_life) * space_factor(distance) * quality`.
pub fn effective_voi(
    base: f64,
    meta: &Metadata,
    now: f64,
    receiver_position: Point,
    profile: &DecayProfile,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&base) {
        return Err(Error::Domain(format!(
            "base value must lie in [0, 1], got {base}"
        )));
    }
    let age = now - meta.generated_at;
    if age.is_nan() || age < 0.0 {
        return Err(Error::TemporalOrdering {
            generated_at: meta.generated_at,
            now,
        });
    }
    let distance = meta.origin_position.distance(receiver_position);
    Ok(base * profile.time_factor(age) * profile.space_factor(distance) * meta.quality)
}
