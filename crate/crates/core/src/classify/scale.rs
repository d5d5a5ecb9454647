/// Per-feature standardization fit on training rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    mean: Vec<f64>,
    /// Reciprocal standard deviation; 0 for constant features.
    inv_std: Vec<f64>,
}

impl Standardizer {
    /// Panics if `rows` is empty.
    pub fn fit(rows: &[Vec<f64>]) -> Self {
        assert!(!rows.is_empty(), "cannot fit a standardizer on zero rows");
        let d = rows[0].len();
        let n = rows.len() as f64;
        let mut mean = vec![0.0; d];
        for r in rows {
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for r in rows {
            for ((s, v), m) in var.iter_mut().zip(r).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let inv_std = var
            .iter()
            .zip(&mean)
            .map(|(s, m)| {
                let std = (s / n).sqrt();
                // Rounding residue of a constant column is not spread.
                if std <= 1e-12 * m.abs().max(1.0) {
                    0.0
                } else {
                    1.0 / std
                }
            })
            .collect();
        Self { mean, inv_std }
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(&self.mean)
            .zip(&self.inv_std)
            .map(|((v, m), s)| (v - m) * s)
            .collect()
    }

    pub fn transform(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.transform_row(r)).collect()
    }
}

/// Fits on `train_rows` only and applies the transform to both sets.
pub fn standardize(
    train_rows: &[Vec<f64>],
    apply_rows: &[Vec<f64>],
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>, Standardizer) {
    let s = Standardizer::fit(train_rows);
    (s.transform(train_rows), s.transform(apply_rows), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_column_maps_to_zero() {
        let train = vec![vec![5.0, 1.0], vec![5.0, 3.0], vec![5.0, 2.0]];
        let (t, _, _) = standardize(&train, &[]);
        assert!(t.iter().all(|r| r[0] == 0.0));
        let c = vec![vec![0.1], vec![0.1], vec![0.1]];
        assert!(Standardizer::fit(&c)
            .transform(&c)
            .iter()
            .all(|r| r[0] == 0.0));
    }

    #[test]
    fn train_columns_have_zero_mean_unit_variance() {
        let train: Vec<Vec<f64>> = (0..20)
            .map(|i| vec![i as f64 * 0.3 + 2.0, (i * i) as f64])
            .collect();
        let (t, _, _) = standardize(&train, &[]);
        for j in 0..2 {
            let mean: f64 = t.iter().map(|r| r[j]).sum::<f64>() / 20.0;
            let var: f64 = t.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / 20.0;
            assert!(mean.abs() < 1e-12);
            assert!((var - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn test_rows_never_influence_the_fit() {
        let train = vec![vec![0.0, 1.0], vec![2.0, 3.0]];
        // A marker feature that is huge only in the held-out row.
        let held_out = vec![vec![1.0e9, 2.0]];
        let (_, applied, s) = standardize(&train, &held_out);
        assert_eq!(s, Standardizer::fit(&train));
        assert_eq!(applied[0][0], (1.0e9 - 1.0) / 1.0);
        assert_eq!(applied[0][1], 0.0);
    }
}
