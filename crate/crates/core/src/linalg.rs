//! Dense helpers for the small systems (n <= 7, rank <= 6) used throughout.

// Indexed loops are clearer than iterator chains in these elimination kernels.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

/// Determinant of a square complex matrix by LU with partial pivoting.
pub fn complex_det(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let sub = f * a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    det
}

/// Determinant of a square real matrix.
pub fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut d = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            d = -d;
        }
        d *= a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    d
}

/// Solve a x = b by Gaussian elimination; `None` when singular.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-14 {
            return None;
        }
        m.swap(pivot, col);
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = m[row][col] / m[col][col];
            for k in col..=n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Inverse of a square real matrix; `None` when singular.
pub fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        cols.push(solve(a, &e)?);
    }
    // cols[j] is the j-th column of the inverse.
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

/// LDL^T factorization of a symmetric positive-definite matrix.
///
/// Returns (u, d) with unit upper-triangular u = L^T such that
/// q(c) = sum_i d[i] * (c[i] + sum_{j>i} u[i][j] c[j])^2.
pub fn ldlt(a: &[Vec<f64>]) -> Option<(Vec<Vec<f64>>, Vec<f64>)> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    let mut d = vec![0.0; n];
    for j in 0..n {
        let mut dj = a[j][j];
        for k in 0..j {
            dj -= l[j][k] * l[j][k] * d[k];
        }
        if !(dj > 0.0) || !dj.is_finite() {
            return None;
        }
        d[j] = dj;
        l[j][j] = 1.0;
        for i in j + 1..n {
            let mut v = a[i][j];
            for k in 0..j {
                v -= l[i][k] * l[j][k] * d[k];
            }
            l[i][j] = v / dj;
        }
    }
    let u: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| l[j][i]).collect()).collect();
    Some((u, d))
}

/// Incremental linear-independence test over growing vector sets.
pub struct IndependenceTracker {
    rows: Vec<Vec<f64>>,
    tol: f64,
}

impl IndependenceTracker {
    pub fn new(tol: f64) -> Self {
        Self { rows: Vec::new(), tol }
    }

    /// Adds `v` if it is independent of the accepted set; returns whether it was added.
    pub fn try_add(&mut self, v: &[f64]) -> bool {
        let mut w = v.to_vec();
        for row in &self.rows {
            let dot: f64 = w.iter().zip(row).map(|(a, b)| a * b).sum();
            let nrm: f64 = row.iter().map(|x| x * x).sum();
            let f = dot / nrm;
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi -= f * ri;
            }
        }
        let scale: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
        let residual: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if residual > self.tol * scale {
            self.rows.push(w);
            true
        } else {
            false
        }
    }
}
