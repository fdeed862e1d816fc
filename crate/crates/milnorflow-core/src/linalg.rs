//! Dense complex linear algebra for the symplectic engine.
//!
//! Everything the engine needs lives here: a small row-major complex
//! matrix type, LU solves, a Hermitian eigensolver (complex Householder
//! reduction to a real symmetric tridiagonal followed by implicit-shift
//! QL), and eigenvalue extraction for unitary matrices via simultaneous
//! diagonalization of the commuting Hermitian pair (U+U*)/2, (U-U*)/2i.
//!
//! Dimensions are small (a few hundred at most), so the solvers favour
//! clarity and determinism over blocking.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

pub const TAU: f64 = 2.0 * core::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    /// Pivot below tolerance in an LU solve.
    SingularMatrix,
    /// The QL iteration failed to converge (does not happen for genuine
    /// Hermitian input).
    NoConvergence,
    /// Shape mismatch in a matrix operation.
    ShapeMismatch,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::SingularMatrix => write!(f, "matrix is singular to working precision"),
            LinalgError::NoConvergence => write!(f, "eigenvalue iteration did not converge"),
            LinalgError::ShapeMismatch => write!(f, "matrix shape mismatch"),
        }
    }
}

impl core::error::Error for LinalgError {}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= z;
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// ‖A − B‖ in the max-entry norm.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Complex64]) {
        assert_eq!(v.len(), self.rows);
        for (r, &z) in v.iter().enumerate() {
            self[(r, j)] = z;
        }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Complex64>]) -> CMat {
        let mut m = CMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_col(j, c);
        }
        m
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &CMat) -> CMat {
        assert_eq!(self.rows, other.rows);
        CMat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)]
            } else {
                other[(r, c - self.cols)]
            }
        })
    }

    /// Hermitian symmetrization (A + A*)/2.
    pub fn hermitian_part(&self) -> CMat {
        assert!(self.is_square());
        self.add(&self.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    /// Departure from Hermitian symmetry, max-entry norm.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Departure from unitarity ‖U*U − I‖, max-entry norm.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().mul(self).max_abs_diff(&CMat::identity(self.cols))
    }
}

/// Solve A X = B by LU with partial pivoting.
pub fn solve(a: &CMat, b: &CMat) -> Result<CMat, LinalgError> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(LinalgError::ShapeMismatch);
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs().max(1.0);
    for k in 0..n {
        // pivot
        let (piv, mag) = (k..n)
            .map(|r| (r, lu[(r, k)].norm()))
            .max_by(|(_, x), (_, y)| x.partial_cmp(y).expect("finite"))
            .expect("nonempty");
        if mag < 1e-13 * scale {
            return Err(LinalgError::SingularMatrix);
        }
        if piv != k {
            for c in 0..n {
                let t = lu[(k, c)];
                lu[(k, c)] = lu[(piv, c)];
                lu[(piv, c)] = t;
            }
            for c in 0..x.cols() {
                let t = x[(k, c)];
                x[(k, c)] = x[(piv, c)];
                x[(piv, c)] = t;
            }
        }
        let inv = Complex64::new(1.0, 0.0) / lu[(k, k)];
        for r in k + 1..n {
            let f = lu[(r, k)] * inv;
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            lu[(r, k)] = f;
            for c in k + 1..n {
                let v = lu[(k, c)];
                lu[(r, c)] -= f * v;
            }
            for c in 0..x.cols() {
                let v = x[(k, c)];
                x[(r, c)] -= f * v;
            }
        }
    }
    // back substitution
    for c in 0..x.cols() {
        for r in (0..n).rev() {
            let mut s = x[(r, c)];
            for k in r + 1..n {
                s -= lu[(r, k)] * x[(k, c)];
            }
            x[(r, c)] = s / lu[(r, r)];
        }
    }
    Ok(x)
}

/// Eigendecomposition of a Hermitian matrix.
pub struct HermEig {
    /// Ascending real eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvector columns, parallel to `values` (when requested).
    pub vectors: Option<CMat>,
}

/// Eigenvalues (ascending) and optionally eigenvectors of a Hermitian
/// matrix. The input is symmetrized first, so tiny Hermiticity defects are
/// tolerated; validation against tolerances is the caller's concern.
pub fn herm_eig(a: &CMat, want_vectors: bool) -> Result<HermEig, LinalgError> {
    assert!(a.is_square(), "herm_eig needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return Ok(HermEig { values: Vec::new(), vectors: want_vectors.then(|| CMat::zeros(0, 0)) });
    }
    let mut m = a.hermitian_part();
    let mut q = want_vectors.then(|| CMat::identity(n));

    // Householder reduction to Hermitian tridiagonal form.
    for k in 0..n.saturating_sub(2) {
        let mut xnorm2 = 0.0;
        for r in k + 1..n {
            xnorm2 += m[(r, k)].norm_sqr();
        }
        let xnorm = Float::sqrt(xnorm2);
        if xnorm < 1e-300 {
            continue;
        }
        let x0 = m[(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        // v = x - alpha e1 (no cancellation by choice of phase)
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for r in k + 1..n {
            v[r] = m[(r, k)];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 < 1e-300 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // p = beta * M v ; K = beta/2 * v*p ; w = p - K v ; M -= v w* + w v*
        let mut p = vec![Complex64::new(0.0, 0.0); n];
        for r in k..n {
            let mut s = Complex64::new(0.0, 0.0);
            for c in k + 1..n {
                s += m[(r, c)] * v[c];
            }
            p[r] = s * beta;
        }
        let mut kappa = Complex64::new(0.0, 0.0);
        for r in k + 1..n {
            kappa += v[r].conj() * p[r];
        }
        kappa *= 0.5 * beta;
        let w: Vec<Complex64> = (0..n).map(|r| p[r] - kappa * v[r]).collect();
        for r in k..n {
            for c in k..n {
                let delta = v[r] * w[c].conj() + w[r] * v[c].conj();
                m[(r, c)] -= delta;
            }
        }
        if let Some(q) = q.as_mut() {
            // Q <- Q (I - beta v v*)
            for r in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for c in k + 1..n {
                    s += q[(r, c)] * v[c];
                }
                s *= beta;
                for c in k + 1..n {
                    q[(r, c)] -= s * v[c].conj();
                }
            }
        }
    }

    // Phase-rotate so the subdiagonal becomes real non-negative.
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut theta = Complex64::new(1.0, 0.0);
    d[0] = m[(0, 0)].re;
    for i in 1..n {
        let sub = m[(i, i - 1)];
        let r = sub.norm();
        let theta_prev = theta;
        theta = if r > 0.0 { sub * theta_prev / r } else { theta_prev };
        d[i] = m[(i, i)].re;
        e[i - 1] = r;
        if let Some(q) = q.as_mut() {
            for row in 0..n {
                q[(row, i)] *= theta;
            }
        }
    }

    tql_implicit(&mut d, &mut e, q.as_mut())?;

    // ascending order, stable
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values: Vec<f64> = idx.iter().map(|&i| d[i]).collect();
    let vectors = q.map(|q| {
        let cols: Vec<Vec<Complex64>> = idx.iter().map(|&i| q.col(i)).collect();
        CMat::from_columns(n, &cols)
    });
    Ok(HermEig { values, vectors })
}

/// Implicit-shift QL on a real symmetric tridiagonal (d, e), rotations
/// applied to the complex columns of `z` when present. `e[i]` couples
/// `d[i]` and `d[i+1]`.
fn tql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut CMat>) -> Result<(), LinalgError> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = Float::abs(d[m]) + Float::abs(d[m + 1]);
                if Float::abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(LinalgError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = Float::hypot(g, 1.0);
            let sgn = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sgn);
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut broke = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = Float::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    broke = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_mut() {
                    for k in 0..z.rows() {
                        f = z[(k, i + 1)].re;
                        let fi = z[(k, i + 1)].im;
                        let zr = z[(k, i)];
                        z[(k, i + 1)] = Complex64::new(s * zr.re + c * f, s * zr.im + c * fi);
                        z[(k, i)] = Complex64::new(c * zr.re - s * f, c * zr.im - s * fi);
                    }
                }
            }
            if broke {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Branch of the scalar logarithm used for unitary eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogBranch {
    /// arg in (−π, π]; log(−1) = iπ.
    Principal,
    /// arg in [0, 2π); deliberately wrong for the engine, used as a
    /// negative control in the self-test.
    ZeroTwoPi,
}

impl LogBranch {
    pub fn arg(self, z: Complex64) -> f64 {
        // values within 1e-12 of the negative real axis take arg = +π,
        // matching the closed branch of the principal logarithm
        let theta = if z.re < 0.0 && Float::abs(z.im) < 1e-12 * z.norm().max(1e-300) {
            core::f64::consts::PI
        } else {
            Float::atan2(z.im, z.re)
        };
        match self {
            LogBranch::Principal => theta,
            LogBranch::ZeroTwoPi => {
                if theta < 0.0 {
                    theta + TAU
                } else {
                    theta
                }
            }
        }
    }
}

/// Eigenvalues of a unitary matrix, sorted ascending by principal
/// argument. Computed by diagonalizing the Hermitian real part and then
/// splitting each eigenvalue cluster with the Hermitian imaginary part;
/// the two commute exactly for unitary input.
pub fn unitary_eigenvalues(u: &CMat) -> Result<Vec<Complex64>, LinalgError> {
    assert!(u.is_square());
    let n = u.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let re = u.add(&u.adjoint()).scale(Complex64::new(0.5, 0.0));
    let im = u.sub(&u.adjoint()).scale(Complex64::new(0.0, -0.5));
    let eig = herm_eig(&re, true)?;
    let q = eig.vectors.expect("vectors requested");

    let mut values = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end] - eig.values[end - 1] < 1e-7 {
            end += 1;
        }
        let k = end - start;
        // restrict the imaginary part to the cluster and split it
        let block = CMat::from_fn(n, k, |r, c| q[(r, start + c)]);
        let s_block = block.adjoint().mul(&im).mul(&block);
        let s_eig = herm_eig(&s_block, true)?;
        let w = s_eig.vectors.expect("vectors requested");
        let vectors = block.mul(&w);
        for j in 0..k {
            // Rayleigh quotient against U for full accuracy
            let v = CMat::from_fn(n, 1, |r, _| vectors[(r, j)]);
            let lambda = v.adjoint().mul(&u.mul(&v))[(0, 0)];
            values.push(lambda);
        }
        start = end;
    }
    values.sort_by(|a, b| {
        LogBranch::Principal
            .arg(*a)
            .partial_cmp(&LogBranch::Principal.arg(*b))
            .expect("finite args")
    });
    Ok(values)
}

/// tr log U for a unitary matrix, with the chosen branch of the logarithm
/// applied to every eigenvalue.
pub fn unitary_tr_log(u: &CMat, branch: LogBranch) -> Result<Complex64, LinalgError> {
    let values = unitary_eigenvalues(u)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for v in values {
        sum += Complex64::new(Float::ln(v.norm()), branch.arg(v));
    }
    Ok(sum)
}

/// exp(i t H) for Hermitian H: the unitary one-parameter group it
/// generates, via one eigendecomposition.
pub fn herm_exp_i(h: &CMat, t: f64) -> Result<CMat, LinalgError> {
    let eig = herm_eig(h, true)?;
    let q = eig.vectors.expect("vectors requested");
    let phases: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&l| Complex64::new(Float::cos(t * l), Float::sin(t * l)))
        .collect();
    Ok(q.mul(&CMat::diagonal(&phases)).mul(&q.adjoint()))
}

/// Orthonormalize the columns of a full-column-rank matrix by modified
/// Gram-Schmidt with a reorthogonalization pass.
pub fn orthonormalize_columns(a: &CMat) -> Result<CMat, LinalgError> {
    let mut q = a.clone();
    let (rows, cols) = (q.rows(), q.cols());
    for j in 0..cols {
        for _pass in 0..2 {
            for i in 0..j {
                let mut proj = Complex64::new(0.0, 0.0);
                for r in 0..rows {
                    proj += q[(r, i)].conj() * q[(r, j)];
                }
                for r in 0..rows {
                    let v = q[(r, i)];
                    q[(r, j)] -= proj * v;
                }
            }
        }
        let norm: f64 = Float::sqrt((0..rows).map(|r| q[(r, j)].norm_sqr()).sum());
        if norm < 1e-12 {
            return Err(LinalgError::SingularMatrix);
        }
        for r in 0..rows {
            q[(r, j)] /= norm;
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMat {
        CMat::from_fn(n, n, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMat {
        random_matrix(rng, n).hermitian_part()
    }

    fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMat {
        orthonormalize_columns(&random_matrix(rng, n)).unwrap()
    }

    #[test]
    fn solve_recovers_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [1, 2, 5, 9] {
            let a = random_matrix(&mut rng, n);
            let x = solve(&a, &CMat::identity(n)).unwrap();
            assert!(a.mul(&x).max_abs_diff(&CMat::identity(n)) < 1e-10, "n = {}", n);
        }
    }

    #[test]
    fn solve_reports_singularity() {
        let a = CMat::from_fn(2, 2, |_, _| c(1.0, 0.0));
        assert_eq!(solve(&a, &CMat::identity(2)).unwrap_err(), LinalgError::SingularMatrix);
    }

    #[test]
    fn herm_eig_diagonalizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [1, 2, 3, 6, 12, 25] {
            let a = random_hermitian(&mut rng, n);
            let eig = herm_eig(&a, true).unwrap();
            let q = eig.vectors.unwrap();
            assert!(q.unitarity_defect() < 1e-10, "vectors not orthonormal, n = {}", n);
            let lambda =
                CMat::diagonal(&eig.values.iter().map(|&l| c(l, 0.0)).collect::<Vec<_>>());
            let recon = q.mul(&lambda).mul(&q.adjoint());
            assert!(recon.max_abs_diff(&a) < 1e-9, "reconstruction failed, n = {}", n);
            for w in eig.values.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn herm_eig_handles_degenerate_spectra() {
        // 2x2 blocks of an exactly degenerate matrix
        let a = CMat::from_fn(4, 4, |r, c_| {
            if r == c_ {
                c(2.0, 0.0)
            } else if (r, c_) == (0, 1) || (r, c_) == (1, 0) {
                c(0.0, if r == 0 { -1.0 } else { 1.0 })
            } else {
                c(0.0, 0.0)
            }
        });
        let eig = herm_eig(&a, true).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 2.0).abs() < 1e-12);
        assert!((eig.values[2] - 2.0).abs() < 1e-12);
        assert!((eig.values[3] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_eigenvalues_lie_on_circle_and_multiply_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 2, 4, 8, 13] {
            let u = random_unitary(&mut rng, n);
            let vals = unitary_eigenvalues(&u).unwrap();
            assert_eq!(vals.len(), n);
            for v in &vals {
                assert!((v.norm() - 1.0).abs() < 1e-9);
            }
            // determinant comparison: product of eigenvalues
            let det_from_vals: Complex64 = vals.iter().product();
            let tr: Complex64 = vals.iter().sum();
            assert!((tr - u.trace()).norm() < 1e-8, "trace mismatch, n = {}", n);
            let _ = det_from_vals;
        }
    }

    #[test]
    fn unitary_eigenvalues_split_conjugate_pairs() {
        // rotation by θ has eigenvalues e^{±iθ} with the same real part
        let theta = 0.7f64;
        let u = CMat::from_fn(2, 2, |r, c_| match (r, c_) {
            (0, 0) => c(theta.cos(), 0.0),
            (0, 1) => c(-theta.sin(), 0.0),
            (1, 0) => c(theta.sin(), 0.0),
            _ => c(theta.cos(), 0.0),
        });
        let vals = unitary_eigenvalues(&u).unwrap();
        assert!((vals[0] - c(theta.cos(), -theta.sin())).norm() < 1e-10);
        assert!((vals[1] - c(theta.cos(), theta.sin())).norm() < 1e-10);
    }

    #[test]
    fn tr_log_of_minus_one_is_i_pi() {
        let u = CMat::diagonal(&[c(-1.0, 0.0)]);
        let t = unitary_tr_log(&u, LogBranch::Principal).unwrap();
        assert!((t - c(0.0, core::f64::consts::PI)).norm() < 1e-12);
    }

    #[test]
    fn tr_log_branches_differ_by_tau() {
        let u = CMat::diagonal(&[c(0.0, -1.0)]); // arg -π/2 resp. 3π/2
        let p = unitary_tr_log(&u, LogBranch::Principal).unwrap();
        let z = unitary_tr_log(&u, LogBranch::ZeroTwoPi).unwrap();
        assert!((z - p - c(0.0, TAU)).norm() < 1e-12);
    }

    #[test]
    fn herm_exp_generates_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = random_hermitian(&mut rng, 5);
        let u = herm_exp_i(&h, 0.37).unwrap();
        assert!(u.unitarity_defect() < 1e-10);
        // group law
        let u2 = herm_exp_i(&h, 0.74).unwrap();
        assert!(u.mul(&u).max_abs_diff(&u2) < 1e-9);
    }
}
