//! Linear soft-margin SVM trained with sequential minimal optimization.
//!
//! The binary solver works on the dual
//!
//! ```text
//! min 1/2 a'Qa - e'a   s.t.  0 <= a_i <= C,  y'a = 0,   Q_ij = y_i y_j <x_i, x_j>
//! ```
//!
//! choosing working pairs with the second-order rule (maximal violating `i`,
//! then the `j` with the largest guaranteed objective decrease), without
//! shrinking. Multiclass problems are split one-vs-one and decided by vote,
//! ties going to the lower class index.

use crate::error::{Error, Result};

pub const DEFAULT_C: f64 = 1.0;
pub const DEFAULT_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

const TAU: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    pub c: f64,
    /// Stopping threshold on the maximal KKT violation.
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        Self {
            c: DEFAULT_C,
            tolerance: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Result of one binary dual solve.
#[derive(Debug, Clone)]
pub struct DualSolution {
    pub alpha: Vec<f64>,
    /// Offset: the decision value is `sum_i alpha_i y_i K(x_i, x) - rho`.
    pub rho: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Solves the binary dual for labels `y` in {+1, -1}. `kernel(i, j)` returns
/// the kernel value between training points `i` and `j`.
pub fn solve_dual(
    y: &[f64],
    kernel: impl Fn(usize, usize) -> f64,
    params: &SvmParams,
) -> DualSolution {
    let n = y.len();
    let c = params.c;
    let mut alpha = vec![0.0; n];
    let mut grad = vec![-1.0; n];
    let diag: Vec<f64> = (0..n).map(|i| kernel(i, i)).collect();
    let q = |i: usize, j: usize| y[i] * y[j] * kernel(i, j);
    let upper = |a: f64| a >= c;
    let lower = |a: f64| a <= 0.0;

    let mut q_i = vec![0.0; n];
    let mut q_j = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        // Maximal violating i among the "up" set.
        let mut g_max = f64::NEG_INFINITY;
        let mut i_sel = None;
        for t in 0..n {
            let v = if y[t] > 0.0 {
                (!upper(alpha[t])).then_some(-grad[t])
            } else {
                (!lower(alpha[t])).then_some(grad[t])
            };
            if let Some(v) = v {
                if v >= g_max {
                    g_max = v;
                    i_sel = Some(t);
                }
            }
        }
        let Some(i) = i_sel else {
            converged = true;
            break;
        };
        for (t, slot) in q_i.iter_mut().enumerate() {
            *slot = q(i, t);
        }
        let mut g_max2 = f64::NEG_INFINITY;
        let mut j_sel = None;
        let mut best_decrease = f64::INFINITY;
        for t in 0..n {
            let (eligible, v, grad_diff, quad) = if y[t] > 0.0 {
                (
                    !lower(alpha[t]),
                    grad[t],
                    g_max + grad[t],
                    diag[i] + diag[t] - 2.0 * y[i] * q_i[t],
                )
            } else {
                (
                    !upper(alpha[t]),
                    -grad[t],
                    g_max - grad[t],
                    diag[i] + diag[t] + 2.0 * y[i] * q_i[t],
                )
            };
            if !eligible {
                continue;
            }
            g_max2 = g_max2.max(v);
            if grad_diff > 0.0 {
                let decrease = -(grad_diff * grad_diff) / if quad > 0.0 { quad } else { TAU };
                if decrease <= best_decrease {
                    best_decrease = decrease;
                    j_sel = Some(t);
                }
            }
        }
        let j = match j_sel {
            Some(j) if g_max + g_max2 >= params.tolerance => j,
            _ => {
                converged = true;
                break;
            }
        };
        iterations += 1;
        for (t, slot) in q_j.iter_mut().enumerate() {
            *slot = q(j, t);
        }

        let (old_i, old_j) = (alpha[i], alpha[j]);
        if y[i] != y[j] {
            let quad = (diag[i] + diag[j] + 2.0 * q_i[j]).max(TAU);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let quad = (diag[i] + diag[j] - 2.0 * q_i[j]).max(TAU);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        let (d_i, d_j) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            grad[t] += q_i[t] * d_i + q_j[t] * d_j;
        }
    }

    DualSolution {
        rho: offset(y, &alpha, &grad, c),
        alpha,
        iterations,
        converged,
    }
}

fn offset(y: &[f64], alpha: &[f64], grad: &[f64], c: f64) -> f64 {
    let mut ub = f64::INFINITY;
    let mut lb = f64::NEG_INFINITY;
    let mut free_sum = 0.0;
    let mut free = 0usize;
    for t in 0..y.len() {
        let yg = y[t] * grad[t];
        if alpha[t] >= c {
            if y[t] < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if y[t] > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            free += 1;
            free_sum += yg;
        }
    }
    if free > 0 {
        free_sum / free as f64
    } else {
        (ub + lb) / 2.0
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Linear decision function `w.x - rho` separating `positive` (> 0) from
/// `negative`.
#[derive(Debug, Clone)]
pub struct BinaryLinear {
    pub positive: usize,
    pub negative: usize,
    pub weights: Vec<f64>,
    pub rho: f64,
    pub converged: bool,
}

impl BinaryLinear {
    pub fn decision(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x) - self.rho
    }
}

/// One-vs-one linear SVM.
#[derive(Debug, Clone)]
pub struct LinearSvm {
    n_classes: usize,
    machines: Vec<BinaryLinear>,
}

impl LinearSvm {
    /// Trains on `rows` with labels in `0..n_classes`. Classes without
    /// samples take part in no pairwise machine.
    pub fn train(
        rows: &[Vec<f64>],
        labels: &[usize],
        n_classes: usize,
        params: &SvmParams,
    ) -> Result<Self> {
        if params.c.is_nan() || params.c <= 0.0 {
            return Err(Error::param(format!(
                "SVM regularization C = {} must be positive",
                params.c
            )));
        }
        if rows.len() != labels.len() {
            return Err(Error::param("row and label counts differ"));
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
        for (i, &l) in labels.iter().enumerate() {
            if l >= n_classes {
                return Err(Error::param(format!("label {l} outside 0..{n_classes}")));
            }
            members[l].push(i);
        }
        let present: Vec<usize> = (0..n_classes).filter(|&c| !members[c].is_empty()).collect();
        if present.len() < 2 {
            return Err(Error::param("SVM training needs at least two classes"));
        }
        let gram = Gram::new(rows);
        let mut machines = Vec::new();
        for (a_pos, &a) in present.iter().enumerate() {
            for &b in &present[a_pos + 1..] {
                let idx: Vec<usize> = members[a].iter().chain(&members[b]).copied().collect();
                let y: Vec<f64> = idx
                    .iter()
                    .map(|&i| if labels[i] == a { 1.0 } else { -1.0 })
                    .collect();
                let sol = solve_dual(&y, |p, q| gram.get(idx[p], idx[q]), params);
                let mut weights = vec![0.0; rows[0].len()];
                for (p, &i) in idx.iter().enumerate() {
                    let coef = sol.alpha[p] * y[p];
                    if coef != 0.0 {
                        for (w, x) in weights.iter_mut().zip(&rows[i]) {
                            *w += coef * x;
                        }
                    }
                }
                machines.push(BinaryLinear {
                    positive: a,
                    negative: b,
                    weights,
                    rho: sol.rho,
                    converged: sol.converged,
                });
            }
        }
        Ok(Self {
            n_classes,
            machines,
        })
    }

    pub fn machines(&self) -> &[BinaryLinear] {
        &self.machines
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        let mut votes = vec![0usize; self.n_classes];
        for m in &self.machines {
            if m.decision(x) > 0.0 {
                votes[m.positive] += 1;
            } else {
                votes[m.negative] += 1;
            }
        }
        // max_by_key keeps the last maximum; scan for the first instead.
        let best = *votes.iter().max().unwrap();
        votes.iter().position(|&v| v == best).unwrap()
    }
}

/// Symmetric linear kernel matrix of the training rows, packed lower triangle.
struct Gram {
    n: usize,
    packed: Vec<f64>,
}

impl Gram {
    fn new(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut packed = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                packed.push(dot(&rows[i], &rows[j]));
            }
        }
        Self { n, packed }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.n && j < self.n);
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        self.packed[hi * (hi + 1) / 2 + lo]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> (Vec<Vec<f64>>, Vec<usize>) {
        let rows = vec![
            vec![1.0, 2.0],
            vec![2.0, 3.0],
            vec![2.5, 1.5],
            vec![-1.0, -1.0],
            vec![-2.0, 0.5],
            vec![-1.5, -2.0],
        ];
        (rows, vec![0, 0, 0, 1, 1, 1])
    }

    #[test]
    fn separable_toy_is_fit_exactly() {
        let (rows, labels) = toy();
        let svm = LinearSvm::train(&rows, &labels, 2, &SvmParams::default()).unwrap();
        assert!(svm.machines()[0].converged);
        for (r, &l) in rows.iter().zip(&labels) {
            assert_eq!(svm.predict(r), l);
        }
    }

    #[test]
    fn hard_margin_solution_matches_geometry() {
        // Points at x = +1 and x = -1: the max-margin separator is x = 0 with
        // w = 1, reached with C large enough.
        let rows = vec![vec![1.0], vec![2.0], vec![-1.0], vec![-3.0]];
        let labels = vec![0, 0, 1, 1];
        let params = SvmParams {
            c: 100.0,
            tolerance: 1e-9,
            ..SvmParams::default()
        };
        let svm = LinearSvm::train(&rows, &labels, 2, &params).unwrap();
        let m = &svm.machines()[0];
        assert!((m.weights[0] - 1.0).abs() < 1e-6, "{:?}", m.weights);
        assert!(m.rho.abs() < 1e-6, "{}", m.rho);
    }

    #[test]
    fn kkt_conditions_hold_at_solution() {
        let (rows, labels) = toy();
        let y: Vec<f64> = labels
            .iter()
            .map(|&l| if l == 0 { 1.0 } else { -1.0 })
            .collect();
        let params = SvmParams {
            c: 0.05,
            tolerance: 1e-8,
            ..SvmParams::default()
        };
        let sol = solve_dual(&y, |i, j| dot(&rows[i], &rows[j]), &params);
        assert!(sol.converged);
        let balance: f64 = sol.alpha.iter().zip(&y).map(|(a, y)| a * y).sum();
        assert!(balance.abs() < 1e-12);
        for (i, &a) in sol.alpha.iter().enumerate() {
            assert!((0.0..=params.c).contains(&a));
            let f: f64 = (0..rows.len())
                .map(|k| sol.alpha[k] * y[k] * dot(&rows[k], &rows[i]))
                .sum::<f64>()
                - sol.rho;
            let margin = y[i] * f;
            if a <= 0.0 {
                assert!(margin >= 1.0 - 1e-6, "{i}: {margin}");
            } else if a >= params.c {
                assert!(margin <= 1.0 + 1e-6, "{i}: {margin}");
            } else {
                assert!((margin - 1.0).abs() < 1e-6, "{i}: {margin}");
            }
        }
    }

    #[test]
    fn identical_rows_with_different_labels() {
        let rows = vec![vec![1.0, 1.0]; 4];
        let labels = vec![0, 1, 0, 1];
        let svm = LinearSvm::train(&rows, &labels, 2, &SvmParams::default()).unwrap();
        let correct = rows
            .iter()
            .zip(&labels)
            .filter(|(r, &l)| svm.predict(r) == l)
            .count();
        assert!(correct <= 2);
    }

    #[test]
    fn multiclass_one_vs_one() {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        let centers = [(0.0, 5.0), (5.0, 0.0), (-5.0, -5.0)];
        for (c, &(cx, cy)) in centers.iter().enumerate() {
            for k in 0..5 {
                let d = k as f64 * 0.3;
                rows.push(vec![cx + d, cy - d]);
                labels.push(c);
            }
        }
        let svm = LinearSvm::train(&rows, &labels, 3, &SvmParams::default()).unwrap();
        assert_eq!(svm.machines().len(), 3);
        for (r, &l) in rows.iter().zip(&labels) {
            assert_eq!(svm.predict(r), l);
        }
    }

    #[test]
    fn vote_ties_go_to_lowest_class() {
        // Three machines each voting for a different class.
        let svm = LinearSvm {
            n_classes: 3,
            machines: vec![
                BinaryLinear {
                    positive: 0,
                    negative: 1,
                    weights: vec![0.0],
                    rho: -1.0,
                    converged: true,
                },
                BinaryLinear {
                    positive: 0,
                    negative: 2,
                    weights: vec![0.0],
                    rho: 1.0,
                    converged: true,
                },
                BinaryLinear {
                    positive: 1,
                    negative: 2,
                    weights: vec![0.0],
                    rho: -1.0,
                    converged: true,
                },
            ],
        };
        assert_eq!(svm.predict(&[0.0]), 0);
    }

    #[test]
    fn parameter_errors() {
        let (rows, _) = toy();
        assert!(LinearSvm::train(&rows, &[0; 6], 2, &SvmParams::default()).is_err());
        let bad = SvmParams {
            c: 0.0,
            ..SvmParams::default()
        };
        assert!(LinearSvm::train(&rows, &[0, 0, 0, 1, 1, 1], 2, &bad).is_err());
    }

    #[test]
    fn deterministic_training() {
        let (rows, labels) = toy();
        let a = LinearSvm::train(&rows, &labels, 2, &SvmParams::default()).unwrap();
        let b = LinearSvm::train(&rows, &labels, 2, &SvmParams::default()).unwrap();
        assert_eq!(a.machines()[0].weights, b.machines()[0].weights);
        assert_eq!(a.machines()[0].rho, b.machines()[0].rho);
    }
}
