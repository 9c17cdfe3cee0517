//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by implicit QL iterations with Wilkinson-style shifts.

use crate::error::{Error, Result};

const MAX_QL_SWEEPS: usize = 60;

/// Dense symmetric matrix stored in full; every write updates both triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * m.n + i] = v;
        }
        m
    }

    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle (`i <= j`).
    pub fn from_upper_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Accepts row data only if it is exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix rows must form a square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest absolute row sum (the induced infinity norm).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Principal submatrix on the given indices.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m.data[a * m.n + b] = self.get(i, j);
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit-norm eigenvector.
    pub vector: Vec<f64>,
}

/// Householder reduction of `z` (row-major, n×n, overwritten) to tridiagonal
/// form. Returns (diagonal, sub-diagonal with `e[0] = 0`). When `want_vectors`
/// is set, `z` is left holding the accumulated orthogonal transformation.
fn householder(z: &mut [f64], n: usize, want_vectors: bool) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let at = |i: usize, j: usize| i * n + j;

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..i).map(|k| z[at(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = z[at(i, l)];
            } else {
                for k in 0..i {
                    z[at(i, k)] /= scale;
                    h += z[at(i, k)] * z[at(i, k)];
                }
                let f = z[at(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                z[at(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..i {
                    if want_vectors {
                        z[at(j, i)] = z[at(i, j)] / h;
                    }
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += z[at(j, k)] * z[at(i, k)];
                    }
                    for k in (j + 1)..i {
                        g += z[at(k, j)] * z[at(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * z[at(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..i {
                    let f = z[at(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        z[at(j, k)] -= f * e[k] + g * z[at(i, k)];
                    }
                }
            }
        } else {
            e[i] = z[at(i, l)];
        }
        d[i] = h;
    }

    if want_vectors {
        d[0] = 0.0;
    }
    e[0] = 0.0;
    for i in 0..n {
        if want_vectors {
            if d[i] != 0.0 {
                for j in 0..i {
                    let mut g = 0.0;
                    for k in 0..i {
                        g += z[at(i, k)] * z[at(k, j)];
                    }
                    for k in 0..i {
                        z[at(k, j)] -= g * z[at(k, i)];
                    }
                }
            }
            d[i] = z[at(i, i)];
            z[at(i, i)] = 1.0;
            for j in 0..i {
                z[at(j, i)] = 0.0;
                z[at(i, j)] = 0.0;
            }
        } else {
            d[i] = z[at(i, i)];
        }
    }
    (d, e)
}

/// Implicit QL on a symmetric tridiagonal matrix. `e` holds the sub-diagonal in
/// `e[1..n]` on entry. If `vectors_t` is given, it holds Qᵀ (row k = k-th basis
/// vector) and receives the eigenvectors as rows.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut vectors_t: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_SWEEPS {
                return Err(Error::EigenNonConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = vectors_t.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
/// `off[i]` couples rows `i` and `i + 1`.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n > 0 && off.len() + 1 != n {
        return Err(Error::InvalidParameter("off-diagonal length must be n - 1".into()));
    }
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[1..].copy_from_slice(off);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// All eigenvalues of `m`, ascending.
pub fn eigenvalues_symmetric(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut z = m.data.clone();
    let (mut d, mut e) = householder(&mut z, n, false);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// The `k` smallest eigenpairs of `m`, ascending by eigenvalue.
pub fn eig_symmetric_lowest(m: &SymmetricMatrix, k: usize) -> Result<Vec<EigenPair>> {
    let n = m.dim();
    if k > n {
        return Err(Error::TooManyEigenpairs {
            requested: k,
            dimension: n,
        });
    }
    let mut z = m.data.clone();
    let (mut d, mut e) = householder(&mut z, n, true);
    // Eigenvectors are accumulated as rows of Qᵀ so each rotation touches two
    // contiguous rows.
    let mut qt = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            qt[j * n + i] = z[i * n + j];
        }
    }
    ql_implicit(&mut d, &mut e, Some(&mut qt))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok(order
        .into_iter()
        .take(k)
        .map(|idx| EigenPair {
            value: d[idx],
            vector: qt[idx * n..(idx + 1) * n].to_vec(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(m: &SymmetricMatrix, pair: &EigenPair) -> f64 {
        let mv = m.mul_vec(&pair.vector);
        mv.iter()
            .zip(&pair.vector)
            .map(|(a, b)| (a - pair.value * b).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn diagonal_matrix() {
        let m = SymmetricMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        let pairs = eig_symmetric_lowest(&m, 2).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!((pairs[0].value - 1.0).abs() < 1e-15);
        assert!((pairs[1].value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = SymmetricMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let pairs = eig_symmetric_lowest(&m, 2).unwrap();
        assert!((pairs[0].value - 1.0).abs() < 1e-14);
        assert!((pairs[1].value - 3.0).abs() < 1e-14);
        let v = &pairs[0].vector;
        assert!((v[0] + v[1]).abs() < 1e-14);
    }

    #[test]
    fn identity_lowest() {
        let pairs = eig_symmetric_lowest(&SymmetricMatrix::identity(5), 1).unwrap();
        assert!((pairs[0].value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn too_many_requested() {
        let err = eig_symmetric_lowest(&SymmetricMatrix::identity(3), 4).unwrap_err();
        assert!(matches!(err, Error::TooManyEigenpairs { .. }));
    }

    #[test]
    fn asymmetric_rows_rejected() {
        assert!(SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).is_err());
    }

    #[test]
    fn tridiagonal_laplacian() {
        // Dirichlet Laplacian: eigenvalues 2 - 2 cos(k pi / (n + 1)).
        let n = 40;
        let ev = tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn residuals_on_dense_matrix() {
        let n = 60;
        let m = SymmetricMatrix::from_upper_fn(n, |i, j| {
            let (a, b) = (i as f64, j as f64);
            ((a + 1.0) * (b + 2.0)).sin() + if i == j { a } else { 0.0 }
        });
        let pairs = eig_symmetric_lowest(&m, n).unwrap();
        let norm = m.norm_inf();
        for w in pairs.windows(2) {
            assert!(w[0].value <= w[1].value);
        }
        for p in &pairs {
            assert!(residual(&m, p) <= 1e-10 * norm, "residual {}", residual(&m, p));
        }
        let values = eigenvalues_symmetric(&m).unwrap();
        for (a, b) in values.iter().zip(&pairs) {
            assert!((a - b.value).abs() < 1e-11 * norm);
        }
    }
}
