//! Test-only oracles and random inputs shared by the integration targets.
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use voi_core::ahp::{ComparisonMatrix, RANDOM_INDEX};
use voi_core::model::{Point, SourceKind, VoiConfig};
use voi_core::sim::{Generator, ScenarioConfig};

pub const SAFETY_CONFIG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/safety.json");
pub const UNIFORM_CONFIG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/uniform.json");
pub const OVERLOAD_SCENARIO: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/overload.json");

/// Dense eigen-decomposition oracle: Perron root from the real Schur form,
/// eigenvector as the null vector of `M - lambda I` from an SVD.
pub fn dense_principal(m: &ComparisonMatrix) -> (f64, Vec<f64>) {
    let n = m.dim();
    let dense = DMatrix::from_fn(n, n, |i, j| m.get(i, j));
    let lambda = dense
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let shifted = &dense - DMatrix::identity(n, n) * lambda;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    let v: Vec<f64> = v_t.row(k).iter().map(|x| x.abs()).collect();
    let sum: f64 = v.iter().sum();
    (lambda, v.into_iter().map(|x| x / sum).collect())
}

/// Consistency ratio from the dense oracle.
pub fn dense_cr(m: &ComparisonMatrix) -> f64 {
    let n = m.dim();
    if n == 2 {
        return 0.0;
    }
    let (lambda, _) = dense_principal(m);
    (lambda - n as f64) / (n as f64 - 1.0) / RANDOM_INDEX[n]
}

#[allow(clippy::needless_range_loop)]
pub fn random_reciprocal(rng: &mut ChaCha8Rng, n: usize) -> ComparisonMatrix {
    let bound = 9f64.ln();
    let mut rows = vec![vec![1.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.gen_range(-bound..=bound).exp().clamp(1.0 / 9.0, 9.0);
            rows[i][j] = v;
            rows[j][i] = 1.0 / v;
        }
    }
    ComparisonMatrix::from_rows(&rows).unwrap()
}

/// Random scenario over the default safety config. With `equal_size`, every
/// generator emits messages of that size.
pub fn random_scenario(rng: &mut ChaCha8Rng, equal_size: Option<u64>) -> ScenarioConfig {
    let mut voi_config = VoiConfig::safety_default();
    voi_config.decay.time_half_life_ms = rng.gen_range(10.0..500.0);
    voi_config.decay.space_radius_m = rng.gen_range(100.0..500.0);
    let generators = (0..rng.gen_range(1..=5))
        .map(|_| Generator {
            source: if rng.gen_bool(0.5) {
                SourceKind::Surrounding
            } else {
                SourceKind::Position
            },
            period_slots: rng.gen_range(1..=5),
            size_bits: equal_size.unwrap_or_else(|| rng.gen_range(100..=1500)),
            quality: rng.gen_range(0.0..=1.0),
            position: Point::new(rng.gen_range(-500.0..500.0), rng.gen_range(-500.0..500.0)),
            quality_jitter: rng.gen_range(0.0..0.3),
            urgency_level: 0,
        })
        .collect();
    ScenarioConfig {
        duration_slots: rng.gen_range(0..=80),
        slot_ms: 10.0,
        channel_bits_per_slot: rng.gen_range(300..=3000),
        generators,
        receiver_position: Point::ORIGIN,
        voi_config,
        gamma: rng.gen_range(1.0 / 9.0..=9.0),
        rng_seed: rng.gen(),
    }
}
