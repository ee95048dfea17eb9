use proptest::prelude::*;
use voi_core::ahp::{self, ComparisonMatrix, WeightVector, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use voi_core::model::{self, SourceKind, VoiConfig};

/// Random valid reciprocal matrix: upper cells `exp(u)`, `u` uniform in
/// `[-ln 9, ln 9]`, lower cells their reciprocals.
#[allow(clippy::needless_range_loop)]
fn reciprocal_matrix(n: usize) -> impl Strategy<Value = ComparisonMatrix> {
    let cells = n * (n - 1) / 2;
    prop::collection::vec(-9f64.ln()..=9f64.ln(), cells).prop_map(move |logs| {
        let mut rows = vec![vec![1.0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = logs[k].exp().clamp(1.0 / 9.0, 9.0);
                rows[i][j] = v;
                rows[j][i] = 1.0 / v;
                k += 1;
            }
        }
        ComparisonMatrix::from_rows(&rows).unwrap()
    })
}

fn any_reciprocal() -> impl Strategy<Value = ComparisonMatrix> {
    (2usize..=6).prop_flat_map(reciprocal_matrix)
}

/// Closed form for 3x3 reciprocal matrices: with a = m01, b = m02, c = m12,
/// lambda_max = 1 + r + 1/r where r = (a c / b)^(1/3), and the principal
/// eigenvector is the row-wise geometric mean.
fn three_by_three_oracle(m: &ComparisonMatrix) -> (f64, Vec<f64>) {
    let (a, b, c) = (m.get(0, 1), m.get(0, 2), m.get(1, 2));
    let r = (a * c / b).cbrt();
    let lambda = 1.0 + r + 1.0 / r;
    let gm: Vec<f64> = m
        .rows()
        .map(|row| row.iter().product::<f64>().cbrt())
        .collect();
    let sum: f64 = gm.iter().sum();
    (lambda, gm.into_iter().map(|g| g / sum).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn consistent_matrix_recovers_generating_vector(
        v in (2usize..=6).prop_flat_map(|n| prop::collection::vec(1.0f64..9.0, n))
    ) {
        let n = v.len();
        let m = ComparisonMatrix::from_weights(&v).unwrap();
        let e = ahp::principal_eigenvector(&m, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        let total: f64 = v.iter().sum();
        for (w, x) in e.weights.as_slice().iter().zip(&v) {
            prop_assert!((w - x / total).abs() < 1e-9);
        }
        prop_assert!((e.lambda_max - n as f64).abs() < 1e-9);
        let r = ahp::consistency(&m, 0.1).unwrap();
        prop_assert!(r.consistency_ratio.abs() < 1e-9);
        prop_assert!(r.is_consistent);
    }

    #[test]
    fn three_by_three_matches_closed_form(m in reciprocal_matrix(3)) {
        let (lambda, weights) = three_by_three_oracle(&m);
        let e = ahp::principal_eigenvector(&m, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        prop_assert!((e.lambda_max - lambda).abs() < 1e-9, "{} vs {}", e.lambda_max, lambda);
        for (w, o) in e.weights.as_slice().iter().zip(&weights) {
            prop_assert!((w - o).abs() < 1e-9);
        }
    }

    #[test]
    fn lambda_max_at_least_dimension(m in any_reciprocal()) {
        let e = ahp::principal_eigenvector(&m, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        prop_assert!(e.lambda_max >= m.dim() as f64 - 1e-9);
        let sum: f64 = e.weights.as_slice().iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-9);
        prop_assert!(e.weights.as_slice().iter().all(|w| *w >= 0.0));
        let r = ahp::consistency(&m, 0.1).unwrap();
        prop_assert!(r.consistency_index >= -1e-9);
        prop_assert_eq!(r.is_consistent, r.consistency_ratio <= 0.1);
    }

    #[test]
    fn reciprocal_transpose_is_identity(m in any_reciprocal()) {
        let t = m.reciprocal_transpose();
        ahp::validate(&t).unwrap();
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                prop_assert!((t.get(i, j) / m.get(i, j) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn synthesize_ignores_attribute_order(
        raw in prop::collection::vec(0.01f64..1.0, 2..6),
        rows_raw in prop::collection::vec(prop::collection::vec(0.01f64..1.0, 3), 6),
        seed in any::<u64>(),
    ) {
        let a = raw.len();
        let w = WeightVector::normalized(raw).unwrap();
        let rows: Vec<Vec<f64>> = rows_raw[..a]
            .iter()
            .map(|r| WeightVector::normalized(r.clone()).unwrap().into_inner())
            .collect();
        // Rotate and reverse as a data-dependent permutation.
        let mut perm: Vec<usize> = (0..a).collect();
        perm.rotate_left((seed % a as u64) as usize);
        if seed & 1 == 1 {
            perm.reverse();
        }
        let pw = WeightVector::new(perm.iter().map(|&i| w[i]).collect()).unwrap();
        let prows: Vec<Vec<f64>> = perm.iter().map(|&i| rows[i].clone()).collect();
        let s1 = ahp::synthesize(&w, &rows).unwrap();
        let s2 = ahp::synthesize(&pw, &prows).unwrap();
        for (x, y) in s1.as_slice().iter().zip(s2.as_slice()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn instantiated_matrix_always_valid(gamma in (1.0f64 / 9.0)..=9.0) {
        let m = model::instantiate_matrix(&VoiConfig::safety_default(), gamma).unwrap();
        prop_assert!(ahp::validate(&m).is_ok());
    }

    #[test]
    fn assess_scores_are_a_distribution(gamma in (1.0f64 / 9.0)..=9.0) {
        let a = model::assess(&VoiConfig::safety_default(), gamma).unwrap();
        let s = a.scores.as_slice();
        prop_assert!(s.iter().all(|x| *x >= 0.0));
        prop_assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn assess_ignores_source_labels(
        conds in prop::collection::vec(reciprocal_matrix(3), 3),
        gamma in (1.0f64 / 9.0)..=9.0,
        rotate in 0usize..3,
    ) {
        let mut cfg = VoiConfig::safety_default();
        cfg.sources = vec![SourceKind::Surrounding, SourceKind::Position, SourceKind::Traffic];
        cfg.conditional_matrices = conds.clone();

        let mut perm: Vec<usize> = (0..3).collect();
        perm.rotate_left(rotate);
        let mut relabeled = cfg.clone();
        relabeled.sources = perm.iter().map(|&i| cfg.sources[i]).collect();
        relabeled.conditional_matrices = conds
            .iter()
            .map(|m| {
                let rows: Vec<Vec<f64>> = perm
                    .iter()
                    .map(|&i| perm.iter().map(|&j| m.get(i, j)).collect())
                    .collect();
                ComparisonMatrix::from_rows(&rows).unwrap()
            })
            .collect();

        let a = model::assess(&cfg, gamma).unwrap();
        let b = model::assess(&relabeled, gamma).unwrap();
        for source in &cfg.sources {
            let x = a.score_of(&cfg, *source).unwrap();
            let y = b.score_of(&relabeled, *source).unwrap();
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn two_source_scores_move_in_opposite_directions() {
    let cfg = VoiConfig::safety_default();
    let mut previous = model::assess(&cfg, 1.0 / 9.0).unwrap();
    for k in 1..=200 {
        let gamma = 1.0 / 9.0 + (9.0 - 1.0 / 9.0) * f64::from(k) / 200.0;
        let current = model::assess(&cfg, gamma).unwrap();
        let d0 = current.scores[0] - previous.scores[0];
        let d1 = current.scores[1] - previous.scores[1];
        assert!((d0 + d1).abs() < 1e-12);
        previous = current;
    }
}
