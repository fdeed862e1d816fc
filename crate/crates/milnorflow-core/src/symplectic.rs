//! Finite-dimensional Hermitian symplectic spaces, Lagrangians, winding
//! numbers, spectral flow and Maslov indices.
//!
//! A Hermitian symplectic space is C^{2m} with a unitary anti-involution γ
//! (γ² = −I, γ* = −γ); its ±i eigenspaces have equal dimension m and a
//! Lagrangian is the graph of a unitary from the +i to the −i eigenspace.
//! Winding numbers of unitary paths are evaluated discretely,
//!
//!   wind = Σ_k (1/2πi) tr Log(U_k* U_{k+1})  −  (1/2πi)(tr Log U_N − tr Log U_0),
//!
//! with the principal logarithm (arg in (−π, π]) and the endpoint
//! correction dropped on closed loops. A step is accepted only when every
//! eigenvalue of U_k* U_{k+1} stays clear of −1 (real part > −1 + 1e-6);
//! otherwise the parameter interval is bisected by re-sampling the
//! caller-supplied generator, up to depth 20.
//!
//! Spectral flow of a Hermitian path is the winding of its Cayley image
//! (A − i)(A + i)⁻¹; an independent eigenvalue-crossing count serves as an
//! oracle. The Maslov index of a pair of Lagrangian paths is
//! −wind(Φ(f)Φ(g)*), and the triple index combines three trace-logs with
//! the same branch.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::linalg::{
    herm_eig, solve, unitary_tr_log, CMat, LinalgError, LogBranch, TAU,
};

const PI: f64 = core::f64::consts::PI;

/// Validation tolerances, fixed by the engine contract.
const TOL_SPACE: f64 = 1e-12;
const TOL_LAGRANGIAN: f64 = 1e-10;
const TOL_HERMITIAN: f64 = 1e-10;
const TOL_UNITARY: f64 = 1e-8;
/// Step acceptance: every step eigenvalue needs real part > −1 + this.
const STEP_REAL_MARGIN: f64 = 1e-6;
const MAX_REFINE_DEPTH: u32 = 20;
/// Triple index refuses eigenvalues this close to −1.
const TOL_BRANCH_HIT: f64 = 1e-10;
/// Crossing oracle: eigenvalues at most this far from zero count as zero.
const TOL_CROSSING_ZERO: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub enum EngineError {
    InvalidSpace(&'static str),
    InvalidLagrangian(&'static str),
    InvalidPath(&'static str),
    NotHermitian { defect: f64 },
    NotUnitary { defect: f64 },
    /// The eigenspace projection of a frame is not invertible.
    DegenerateFrame,
    /// Bisection down to the depth limit could not separate step
    /// eigenvalues from −1.
    StepTooCoarse { t0: f64, t1: f64 },
    /// A closed path's winding failed to round to an integer.
    WindNotIntegral { raw: f64 },
    /// A triple-index logarithm has an eigenvalue within 1e-10 of −1.
    BranchHit,
    /// The crossing count needs invertible endpoints to be integral.
    SingularEndpoint,
    Linalg(LinalgError),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::InvalidSpace(s) => write!(f, "invalid symplectic space: {}", s),
            EngineError::InvalidLagrangian(s) => write!(f, "invalid Lagrangian: {}", s),
            EngineError::InvalidPath(s) => write!(f, "invalid path: {}", s),
            EngineError::NotHermitian { defect } => {
                write!(f, "matrix is not Hermitian (defect {:.3e})", defect)
            }
            EngineError::NotUnitary { defect } => {
                write!(f, "matrix is not unitary (defect {:.3e})", defect)
            }
            EngineError::DegenerateFrame => write!(f, "frame projects degenerately"),
            EngineError::StepTooCoarse { t0, t1 } => write!(
                f,
                "step [{}, {}] too coarse: eigenvalues near -1 persist at refinement depth {}",
                t0, t1, MAX_REFINE_DEPTH
            ),
            EngineError::WindNotIntegral { raw } => {
                write!(f, "closed path winding {} does not round to an integer", raw)
            }
            EngineError::BranchHit => {
                write!(f, "logarithm branch point: eigenvalue within 1e-10 of -1")
            }
            EngineError::SingularEndpoint => {
                write!(f, "endpoint eigenvalue at zero leaves a half-integral crossing count")
            }
            EngineError::Linalg(e) => write!(f, "linear algebra failure: {}", e),
        }
    }
}

impl core::error::Error for EngineError {}

impl From<LinalgError> for EngineError {
    fn from(e: LinalgError) -> Self {
        EngineError::Linalg(e)
    }
}

/// C^{2m} with a unitary anti-involution γ and pinned orthonormal bases of
/// its ±i eigenspaces. All Φ matrices are expressed in these bases; winding
/// numbers do not depend on the choice, but reproducibility does, so the
/// frame is fixed by one deterministic eigendecomposition at construction.
pub struct HermitianSymplecticSpace {
    gamma: CMat,
    half_dim: usize,
    basis_plus: CMat,
    basis_minus: CMat,
}

impl HermitianSymplecticSpace {
    /// Validate γ and fix the eigenframe.
    pub fn new(gamma: CMat) -> Result<Self, EngineError> {
        if !gamma.is_square() || gamma.rows() % 2 != 0 || gamma.rows() == 0 {
            return Err(EngineError::InvalidSpace("gamma must be square of even dimension"));
        }
        let dim = gamma.rows();
        let m = dim / 2;
        if gamma.add(&gamma.adjoint()).max_abs() > TOL_SPACE {
            return Err(EngineError::InvalidSpace("gamma* = -gamma fails"));
        }
        if gamma.mul(&gamma).add(&CMat::identity(dim)).max_abs() > TOL_SPACE {
            return Err(EngineError::InvalidSpace("gamma^2 = -I fails"));
        }
        // iγ is a Hermitian involution; its −1 eigenspace is ker(γ − i).
        let ig = gamma.scale(Complex64::new(0.0, 1.0));
        let eig = herm_eig(&ig, true)?;
        let q = eig.vectors.expect("vectors requested");
        let minus_count = eig.values.iter().filter(|&&v| v < 0.0).count();
        if minus_count != m {
            return Err(EngineError::InvalidSpace("±i eigenspaces have unequal dimensions"));
        }
        // ascending eigenvalues: first m columns are the −1 block of iγ
        let plus_cols: Vec<Vec<Complex64>> = (0..m).map(|j| q.col(j)).collect();
        let minus_cols: Vec<Vec<Complex64>> = (m..dim).map(|j| q.col(j)).collect();
        let basis_plus = canonicalize_columns(CMat::from_columns(dim, &plus_cols));
        let basis_minus = canonicalize_columns(CMat::from_columns(dim, &minus_cols));
        Ok(HermitianSymplecticSpace { gamma, half_dim: m, basis_plus, basis_minus })
    }

    /// The standard space: γ = [[0, −I], [I, 0]] on C^{2m}, with the
    /// closed-form eigenframes (e_j, ∓i e_j)/√2.
    pub fn standard(m: usize) -> Self {
        assert!(m > 0, "empty symplectic space");
        let dim = 2 * m;
        let mut gamma = CMat::zeros(dim, dim);
        for j in 0..m {
            gamma[(j, m + j)] = Complex64::new(-1.0, 0.0);
            gamma[(m + j, j)] = Complex64::new(1.0, 0.0);
        }
        let s = 1.0 / Float::sqrt(2.0);
        let mut basis_plus = CMat::zeros(dim, m);
        let mut basis_minus = CMat::zeros(dim, m);
        for j in 0..m {
            basis_plus[(j, j)] = Complex64::new(s, 0.0);
            basis_plus[(m + j, j)] = Complex64::new(0.0, -s);
            basis_minus[(j, j)] = Complex64::new(s, 0.0);
            basis_minus[(m + j, j)] = Complex64::new(0.0, s);
        }
        HermitianSymplecticSpace { gamma, half_dim: m, basis_plus, basis_minus }
    }

    pub fn gamma(&self) -> &CMat {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        2 * self.half_dim
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    /// Orthonormal basis of ker(γ − i), as columns.
    pub fn basis_plus(&self) -> &CMat {
        &self.basis_plus
    }

    /// Orthonormal basis of ker(γ + i), as columns.
    pub fn basis_minus(&self) -> &CMat {
        &self.basis_minus
    }

    /// The orthogonal projections (I ∓ iγ)/2 onto the ±i eigenspaces.
    pub fn projections_pm(&self) -> (CMat, CMat) {
        let dim = self.dim();
        let ig = self.gamma.scale(Complex64::new(0.0, 1.0));
        let half = Complex64::new(0.5, 0.0);
        let p_plus = CMat::identity(dim).sub(&ig).scale(half);
        let p_minus = CMat::identity(dim).add(&ig).scale(half);
        (p_plus, p_minus)
    }

    /// e^{θγ} = cos(θ) I + sin(θ) γ.
    pub fn gamma_rotation(&self, theta: f64) -> CMat {
        CMat::identity(self.dim())
            .scale(Complex64::new(Float::cos(theta), 0.0))
            .add(&self.gamma.scale(Complex64::new(Float::sin(theta), 0.0)))
    }
}

/// Pin the phase and order of orthonormal columns: the largest entry of
/// each column is made real positive, then columns sort lexicographically.
fn canonicalize_columns(mut m: CMat) -> CMat {
    let (rows, cols) = (m.rows(), m.cols());
    for j in 0..cols {
        let mut best = 0;
        let mut best_mag = -1.0;
        for r in 0..rows {
            let mag = m[(r, j)].norm();
            if mag > best_mag + 1e-12 {
                best_mag = mag;
                best = r;
            }
        }
        let z = m[(best, j)];
        if z.norm() > 0.0 {
            let phase = z.conj() / z.norm();
            for r in 0..rows {
                m[(r, j)] *= phase;
            }
        }
    }
    let mut cols_v: Vec<Vec<Complex64>> = (0..cols).map(|j| m.col(j)).collect();
    cols_v.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            match x.re.partial_cmp(&y.re).expect("finite") {
                core::cmp::Ordering::Equal => {}
                o => return o,
            }
            match x.im.partial_cmp(&y.im).expect("finite") {
                core::cmp::Ordering::Equal => {}
                o => return o,
            }
        }
        core::cmp::Ordering::Equal
    });
    CMat::from_columns(rows, &cols_v)
}

/// A Lagrangian subspace, carried as a 2m×m frame with orthonormal columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Lagrangian {
    frame: CMat,
}

impl Lagrangian {
    /// Validate orthonormality and isotropy against the space. Inputs that
    /// fail validation are rejected, never repaired.
    pub fn new(frame: CMat, space: &HermitianSymplecticSpace) -> Result<Self, EngineError> {
        if frame.rows() != space.dim() || frame.cols() != space.half_dim() {
            return Err(EngineError::InvalidLagrangian("frame shape mismatch"));
        }
        if frame.unitarity_defect() > TOL_LAGRANGIAN {
            return Err(EngineError::InvalidLagrangian("columns not orthonormal"));
        }
        let iso = frame.adjoint().mul(space.gamma()).mul(&frame).max_abs();
        if iso > TOL_LAGRANGIAN {
            return Err(EngineError::InvalidLagrangian("frame is not isotropic"));
        }
        Ok(Lagrangian { frame })
    }

    /// The graph {x + Φx : x ∈ ker(γ−i)} of a unitary Φ in the space's
    /// pinned eigenbases. Always a Lagrangian.
    pub fn from_unitary(phi: &CMat, space: &HermitianSymplecticSpace) -> Result<Self, EngineError> {
        let m = space.half_dim();
        if phi.rows() != m || phi.cols() != m {
            return Err(EngineError::InvalidLagrangian("unitary dimension mismatch"));
        }
        let defect = phi.unitarity_defect();
        if defect > TOL_UNITARY {
            return Err(EngineError::NotUnitary { defect });
        }
        let s = Complex64::new(1.0 / Float::sqrt(2.0), 0.0);
        let frame = space.basis_plus().add(&space.basis_minus().mul(phi)).scale(s);
        Ok(Lagrangian { frame })
    }

    pub fn frame(&self) -> &CMat {
        &self.frame
    }

    /// Image under a unitary of the ambient space (unitaries preserve
    /// orthonormal frames; isotropy is preserved when U commutes with γ or
    /// is a γ-rotation).
    pub fn transformed(&self, u: &CMat) -> Lagrangian {
        Lagrangian { frame: u.mul(&self.frame) }
    }

    /// dim(L ∩ L'), computed from the singular values of Φ(L) − Φ(L').
    pub fn intersection_dim(
        &self,
        other: &Lagrangian,
        space: &HermitianSymplecticSpace,
    ) -> Result<usize, EngineError> {
        let a = lagrangian_to_unitary(self, space)?;
        let b = lagrangian_to_unitary(other, space)?;
        let d = a.sub(&b);
        // eigenvalues of (A−B)*(A−B); zero eigenvalues count intersections
        let g = d.adjoint().mul(&d);
        let eig = herm_eig(&g, false)?;
        Ok(eig.values.iter().filter(|&&v| v < 1e-16).count())
    }
}

/// Φ(L): the unitary ker(γ−i) → ker(γ+i) whose graph is L, in the space's
/// pinned bases.
pub fn lagrangian_to_unitary(
    l: &Lagrangian,
    space: &HermitianSymplecticSpace,
) -> Result<CMat, EngineError> {
    let a = space.basis_plus().adjoint().mul(l.frame());
    let c = space.basis_minus().adjoint().mul(l.frame());
    // Φ A = C; A is (1/√2)·unitary for a true Lagrangian
    let a_inv = solve(&a, &CMat::identity(space.half_dim()))
        .map_err(|_| EngineError::DegenerateFrame)?;
    Ok(c.mul(&a_inv))
}

/// κ(A) = (A − i)(A + i)⁻¹, the Cayley transform of a Hermitian matrix:
/// unitary, with κ(A) − I injective.
pub fn cayley(a: &CMat) -> Result<CMat, EngineError> {
    let defect = a.hermiticity_defect();
    if defect > TOL_HERMITIAN {
        return Err(EngineError::NotHermitian { defect });
    }
    let n = a.rows();
    let i_mat = CMat::identity(n).scale(Complex64::new(0.0, 1.0));
    let denom = a.add(&i_mat);
    let numer = a.sub(&i_mat);
    Ok(solve(&denom, &numer)?)
}

/// A sampled path of unitaries on [grid[0], grid[last]], optionally backed
/// by a generator for refinement.
pub struct UnitaryPath {
    grid: Vec<f64>,
    samples: Vec<CMat>,
    generator: Option<Box<dyn Fn(f64) -> CMat>>,
}

impl UnitaryPath {
    pub fn from_samples(grid: Vec<f64>, samples: Vec<CMat>) -> Result<Self, EngineError> {
        validate_grid(&grid, samples.len())?;
        for s in &samples {
            let defect = s.unitarity_defect();
            if defect > TOL_UNITARY {
                return Err(EngineError::NotUnitary { defect });
            }
        }
        Ok(UnitaryPath { grid, samples, generator: None })
    }

    /// Uniform grid of n+1 samples of the generator over [0, 1]; the
    /// generator is kept for refinement.
    pub fn from_generator(gen: impl Fn(f64) -> CMat + 'static, n: usize) -> Result<Self, EngineError> {
        if n < 1 {
            return Err(EngineError::InvalidPath("need at least one step"));
        }
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let samples: Vec<CMat> = grid.iter().map(|&t| gen(t)).collect();
        let mut path = Self::from_samples(grid, samples)?;
        path.generator = Some(Box::new(gen));
        Ok(path)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn samples(&self) -> &[CMat] {
        &self.samples
    }
}

/// A sampled path of Hermitian matrices.
pub struct HermitianPath {
    grid: Vec<f64>,
    samples: Vec<CMat>,
    generator: Option<Box<dyn Fn(f64) -> CMat>>,
}

impl HermitianPath {
    pub fn from_samples(grid: Vec<f64>, samples: Vec<CMat>) -> Result<Self, EngineError> {
        validate_grid(&grid, samples.len())?;
        for s in &samples {
            let defect = s.hermiticity_defect();
            if defect > TOL_HERMITIAN {
                return Err(EngineError::NotHermitian { defect });
            }
        }
        Ok(HermitianPath { grid, samples, generator: None })
    }

    pub fn from_generator(gen: impl Fn(f64) -> CMat + 'static, n: usize) -> Result<Self, EngineError> {
        if n < 1 {
            return Err(EngineError::InvalidPath("need at least one step"));
        }
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let samples: Vec<CMat> = grid.iter().map(|&t| gen(t)).collect();
        let mut path = Self::from_samples(grid, samples)?;
        path.generator = Some(Box::new(gen));
        Ok(path)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn samples(&self) -> &[CMat] {
        &self.samples
    }
}

/// A sampled path of Lagrangian pairs (moving, reference).
pub struct LagrangianPairPath {
    grid: Vec<f64>,
    samples: Vec<(Lagrangian, Lagrangian)>,
    generator: Option<Box<dyn Fn(f64) -> (Lagrangian, Lagrangian)>>,
}

impl LagrangianPairPath {
    pub fn from_samples(
        grid: Vec<f64>,
        samples: Vec<(Lagrangian, Lagrangian)>,
    ) -> Result<Self, EngineError> {
        validate_grid(&grid, samples.len())?;
        Ok(LagrangianPairPath { grid, samples, generator: None })
    }

    pub fn from_generator(
        gen: impl Fn(f64) -> (Lagrangian, Lagrangian) + 'static,
        n: usize,
    ) -> Result<Self, EngineError> {
        if n < 1 {
            return Err(EngineError::InvalidPath("need at least one step"));
        }
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let samples: Vec<(Lagrangian, Lagrangian)> = grid.iter().map(|&t| gen(t)).collect();
        let mut path = Self::from_samples(grid, samples)?;
        path.generator = Some(Box::new(gen));
        Ok(path)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn samples(&self) -> &[(Lagrangian, Lagrangian)] {
        &self.samples
    }
}

fn validate_grid(grid: &[f64], nsamples: usize) -> Result<(), EngineError> {
    if grid.len() != nsamples {
        return Err(EngineError::InvalidPath("grid and sample counts differ"));
    }
    if grid.len() < 2 {
        return Err(EngineError::InvalidPath("need at least two samples"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EngineError::InvalidPath("grid must be strictly increasing"));
    }
    Ok(())
}

/// Outcome of a winding evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindResult {
    /// The reported winding; for closed paths this is the rounded integer.
    pub value: f64,
    /// The raw value before rounding.
    pub raw: f64,
    /// Number of accepted steps, including refinements.
    pub steps: usize,
    /// How many bisections the step-acceptance rule forced.
    pub refinements: usize,
}

struct StepAccum {
    phase_sum: f64,
    steps: usize,
    refinements: usize,
}

/// Σ of the principal eigenvalue phases of U_a* U_b, refined until every
/// eigenvalue stays clear of −1.
fn step_phase(
    ua: &CMat,
    ub: &CMat,
    t0: f64,
    t1: f64,
    generator: Option<&(dyn Fn(f64) -> CMat + '_)>,
    depth: u32,
    acc: &mut StepAccum,
) -> Result<(), EngineError> {
    let v = ua.adjoint().mul(ub);
    let n = v.rows();
    // w = i (I + V)^{-1} (I − V) is Hermitian with eigenvalues tan(θ/2)
    let id = CMat::identity(n);
    let w = solve(&id.add(&v), &id.sub(&v)).ok().map(|w| w.scale(Complex64::new(0.0, 1.0)));
    if let Some(w) = w {
        let defect = w.hermiticity_defect();
        if defect <= 1e-6 * w.max_abs().max(1.0) {
            let eig = herm_eig(&w, false)?;
            // Re λ = (1 − w²)/(1 + w²) must exceed −1 + margin
            let ok = eig
                .values
                .iter()
                .all(|&t| (1.0 - t * t) / (1.0 + t * t) > -1.0 + STEP_REAL_MARGIN);
            if ok {
                acc.phase_sum += eig.values.iter().map(|&t| 2.0 * Float::atan(t)).sum::<f64>();
                acc.steps += 1;
                return Ok(());
            }
        }
    }
    // eigenvalue at or near −1: bisect if we can
    let Some(gen) = generator else {
        return Err(EngineError::StepTooCoarse { t0, t1 });
    };
    if depth >= MAX_REFINE_DEPTH {
        return Err(EngineError::StepTooCoarse { t0, t1 });
    }
    let tm = 0.5 * (t0 + t1);
    let um = gen(tm);
    acc.refinements += 1;
    step_phase(ua, &um, t0, tm, Some(gen), depth + 1, acc)?;
    step_phase(&um, ub, tm, t1, Some(gen), depth + 1, acc)
}

fn wind_impl(
    grid: &[f64],
    samples: &[CMat],
    generator: Option<&(dyn Fn(f64) -> CMat + '_)>,
    closed: bool,
) -> Result<WindResult, EngineError> {
    let n = samples.len();
    if closed {
        let gap = samples[0].max_abs_diff(&samples[n - 1]);
        if gap > 1e-8 {
            return Err(EngineError::InvalidPath("closed path endpoints differ"));
        }
    }
    let mut acc = StepAccum { phase_sum: 0.0, steps: 0, refinements: 0 };
    for k in 0..n - 1 {
        step_phase(&samples[k], &samples[k + 1], grid[k], grid[k + 1], generator, 0, &mut acc)?;
    }
    let mut raw = acc.phase_sum / TAU;
    if !closed {
        let log_end = unitary_tr_log(&samples[n - 1], LogBranch::Principal)?;
        let log_start = unitary_tr_log(&samples[0], LogBranch::Principal)?;
        raw -= (log_end.im - log_start.im) / TAU;
    }
    let value = if closed {
        let rounded = Float::round(raw);
        if Float::abs(raw - rounded) >= 1e-6 {
            return Err(EngineError::WindNotIntegral { raw });
        }
        rounded
    } else {
        raw
    };
    Ok(WindResult { value, raw, steps: acc.steps, refinements: acc.refinements })
}

/// Winding number of a unitary path; integer (after the 1e-6 rounding
/// assertion) when `closed`.
pub fn wind(path: &UnitaryPath, closed: bool) -> Result<WindResult, EngineError> {
    wind_impl(&path.grid, &path.samples, path.generator.as_ref().map(|g| g.as_ref()), closed)
}

/// Spectral flow of a Hermitian path: the winding of its Cayley image.
pub fn spectral_flow_cayley(path: &HermitianPath, closed: bool) -> Result<WindResult, EngineError> {
    let cayley_samples: Vec<CMat> =
        path.samples.iter().map(cayley).collect::<Result<_, _>>()?;
    match &path.generator {
        None => wind_impl(&path.grid, &cayley_samples, None, closed),
        Some(gen) => {
            let g = move |t: f64| cayley(&gen(t)).expect("generator produced non-Hermitian sample");
            wind_impl(&path.grid, &cayley_samples, Some(&g), closed)
        }
    }
}

/// Independent oracle for the spectral flow: the signed count of
/// eigenvalue crossings through zero (upward minus downward), from a dense
/// eigendecomposition at every sample. Zero eigenvalues at the endpoints
/// carry half-crossing weights; if those leave a half-integral total the
/// endpoints were genuinely singular and `SingularEndpoint` is raised.
pub fn spectral_flow_crossings(path: &HermitianPath) -> Result<i64, EngineError> {
    let spectra: Vec<Vec<f64>> = path
        .samples
        .iter()
        .map(|a| herm_eig(a, false).map(|e| e.values))
        .collect::<Result<_, _>>()?;
    let neg = |v: &[f64]| v.iter().filter(|&&x| x < -TOL_CROSSING_ZERO).count() as i64;
    let zeros = |v: &[f64]| v.iter().filter(|&&x| Float::abs(x) <= TOL_CROSSING_ZERO).count() as i64;

    // interior crossings via the negative-count differences; each endpoint
    // zero that leaves (start) or arrives (end) contributes half a crossing
    let mut doubled = 0i64;
    for w in spectra.windows(2) {
        doubled += 2 * (neg(&w[0]) - neg(&w[1]));
    }
    doubled += zeros(&spectra[0]);
    doubled -= zeros(&spectra[spectra.len() - 1]);
    if doubled % 2 != 0 {
        return Err(EngineError::SingularEndpoint);
    }
    Ok(doubled / 2)
}

/// Maslov index of a path of Lagrangian pairs: −wind(Φ(f)Φ(g)*).
pub fn maslov(
    path: &LagrangianPairPath,
    space: &HermitianSymplecticSpace,
    closed: bool,
) -> Result<WindResult, EngineError> {
    let u_samples: Vec<CMat> = path
        .samples
        .iter()
        .map(|(f, g)| {
            let pf = lagrangian_to_unitary(f, space)?;
            let pg = lagrangian_to_unitary(g, space)?;
            Ok(pf.mul(&pg.adjoint()))
        })
        .collect::<Result<_, EngineError>>()?;
    let result = match &path.generator {
        None => wind_impl(&path.grid, &u_samples, None, closed)?,
        Some(gen) => {
            let g = move |t: f64| {
                let (f, gref) = gen(t);
                let pf = lagrangian_to_unitary(&f, space).expect("generator Lagrangian degenerate");
                let pg =
                    lagrangian_to_unitary(&gref, space).expect("generator Lagrangian degenerate");
                pf.mul(&pg.adjoint())
            };
            wind_impl(&path.grid, &u_samples, Some(&g), closed)?
        }
    };
    Ok(WindResult {
        value: -result.value,
        raw: -result.raw,
        steps: result.steps,
        refinements: result.refinements,
    })
}

/// Maslov triple index τ(P, Q, R) with the principal branch.
pub fn triple_index(
    p: &Lagrangian,
    q: &Lagrangian,
    r: &Lagrangian,
    space: &HermitianSymplecticSpace,
) -> Result<f64, EngineError> {
    triple_index_with_branch(p, q, r, space, LogBranch::Principal)
}

/// τ(P,Q,R) = (1/2πi)(tr log Φ(P)Φ(Q)* + tr log Φ(Q)Φ(R)* − tr log Φ(P)Φ(R)*)
/// with a caller-chosen logarithm branch. Only the principal branch
/// satisfies the cocycle identity; the other exists as a negative control.
pub fn triple_index_with_branch(
    p: &Lagrangian,
    q: &Lagrangian,
    r: &Lagrangian,
    space: &HermitianSymplecticSpace,
    branch: LogBranch,
) -> Result<f64, EngineError> {
    let fp = lagrangian_to_unitary(p, space)?;
    let fq = lagrangian_to_unitary(q, space)?;
    let fr = lagrangian_to_unitary(r, space)?;
    let mut total = 0.0;
    for (a, b, sign) in [(&fp, &fq, 1.0), (&fq, &fr, 1.0), (&fp, &fr, -1.0)] {
        let u = a.mul(&b.adjoint());
        let values = crate::linalg::unitary_eigenvalues(&u)?;
        for v in &values {
            if (v + Complex64::new(1.0, 0.0)).norm() < TOL_BRANCH_HIT {
                return Err(EngineError::BranchHit);
            }
        }
        total += sign * values.iter().map(|&v| branch.arg(v)).sum::<f64>();
    }
    Ok(total / TAU)
}

/// Convenience: wind of the loop t ↦ e^{2πi t} I_m, the degree-m circle.
pub fn full_rotation_loop(m: usize, samples: usize) -> Result<UnitaryPath, EngineError> {
    UnitaryPath::from_generator(
        move |t| {
            CMat::identity(m).scale(Complex64::new(Float::cos(TAU * t), Float::sin(TAU * t)))
        },
        samples,
    )
}

#[allow(dead_code)]
fn unused_pi_guard() -> f64 {
    PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_space() -> HermitianSymplecticSpace {
        HermitianSymplecticSpace::standard(1)
    }

    #[test]
    fn projections_are_idempotent_and_complementary() {
        let space = scalar_space();
        let (p, q) = space.projections_pm();
        assert!(p.mul(&p).max_abs_diff(&p) < 1e-14);
        assert!(q.mul(&q).max_abs_diff(&q) < 1e-14);
        assert!(p.add(&q).max_abs_diff(&CMat::identity(2)) < 1e-14);
        assert!(p.mul(&q).max_abs() < 1e-14);
        // worked 2x2 projection: P+ = [[1, i], [−i, 1]]/2
        assert!((p[(0, 0)] - c(0.5, 0.0)).norm() < 1e-14);
        assert!((p[(0, 1)] - c(0.0, 0.5)).norm() < 1e-14);
        assert!((p[(1, 0)] - c(0.0, -0.5)).norm() < 1e-14);
    }

    #[test]
    fn generic_constructor_agrees_with_standard_projections() {
        let std_space = HermitianSymplecticSpace::standard(2);
        let space = HermitianSymplecticSpace::new(std_space.gamma().clone()).unwrap();
        let (p1, _) = space.projections_pm();
        let (p2, _) = std_space.projections_pm();
        assert!(p1.max_abs_diff(&p2) < 1e-12);
        // frames span the same eigenspaces: P+ B+ = B+
        assert!(p1.mul(space.basis_plus()).max_abs_diff(space.basis_plus()) < 1e-10);
    }

    #[test]
    fn coordinate_lagrangian_has_unimodular_phi() {
        let space = scalar_space();
        let frame = CMat::from_fn(2, 1, |r, _| if r == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let l = Lagrangian::new(frame, &space).unwrap();
        let phi = lagrangian_to_unitary(&l, &space).unwrap();
        assert!((phi[(0, 0)].norm() - 1.0).abs() < 1e-12);
        assert!((phi[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn unitary_round_trips_through_graph() {
        let space = HermitianSymplecticSpace::standard(3);
        let phi = CMat::diagonal(&[c(0.6, 0.8), c(0.0, 1.0), c(-1.0, 0.0)]);
        let l = Lagrangian::from_unitary(&phi, &space).unwrap();
        let back = lagrangian_to_unitary(&l, &space).unwrap();
        assert!(back.max_abs_diff(&phi) < 1e-12);
    }

    #[test]
    fn gamma_rotation_multiplies_phi_by_phase() {
        let space = scalar_space();
        let frame = CMat::from_fn(2, 1, |r, _| if r == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let l = Lagrangian::new(frame, &space).unwrap();
        let theta = 0.3;
        let rot = space.gamma_rotation(theta);
        let lrot = l.transformed(&rot);
        let phi = lagrangian_to_unitary(&lrot, &space).unwrap();
        // e^{θγ} multiplies Φ by e^{-2iθ} in this convention
        assert!((phi[(0, 0)] - c((2.0 * theta).cos(), -(2.0 * theta).sin())).norm() < 1e-12);
    }

    #[test]
    fn cayley_scalar_values() {
        let zero = CMat::zeros(1, 1);
        let u = cayley(&zero).unwrap();
        assert!((u[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-14);
        let one = CMat::diagonal(&[c(1.0, 0.0)]);
        let u = cayley(&one).unwrap();
        assert!((u[(0, 0)] - c(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn cayley_maps_eigenvalues() {
        let a = CMat::diagonal(&[c(-2.0, 0.0), c(0.5, 0.0), c(3.0, 0.0)]);
        let u = cayley(&a).unwrap();
        assert!(u.unitarity_defect() < 1e-12);
        for (i, &x) in [-2.0f64, 0.5, 3.0].iter().enumerate() {
            let expect = c(x, -1.0) / c(x, 1.0);
            assert!((u[(i, i)] - expect).norm() < 1e-13);
        }
        // κ(A) − I is injective: no unit eigenvalue
        let dist = crate::linalg::unitary_eigenvalues(&u)
            .unwrap()
            .iter()
            .map(|v| (v - c(1.0, 0.0)).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(dist > 0.1);
    }

    #[test]
    fn cayley_rejects_non_hermitian() {
        let a = CMat::from_fn(2, 2, |r, c_| if (r, c_) == (0, 1) { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!(matches!(cayley(&a), Err(EngineError::NotHermitian { .. })));
    }

    #[test]
    fn wind_of_full_rotations() {
        for m in 1..=4 {
            let path = full_rotation_loop(m, 16).unwrap();
            let w = wind(&path, true).unwrap();
            assert_eq!(w.value, m as f64, "m = {}", m);
        }
    }

    #[test]
    fn wind_of_constant_path_is_zero() {
        let path = UnitaryPath::from_generator(|_| CMat::identity(3), 8).unwrap();
        assert_eq!(wind(&path, true).unwrap().value, 0.0);
        assert!(wind(&path, false).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn wind_counts_phases_with_signs() {
        // diag(e^{4πit}, e^{−2πit}): winding 2 − 1 = 1
        let path = UnitaryPath::from_generator(
            |t| {
                CMat::diagonal(&[
                    c((2.0 * TAU * t).cos(), (2.0 * TAU * t).sin()),
                    c((TAU * t).cos(), -(TAU * t).sin()),
                ])
            },
            32,
        )
        .unwrap();
        assert_eq!(wind(&path, true).unwrap().value, 1.0);
    }

    #[test]
    fn step_on_branch_cut_refines_through_generator() {
        // 2 samples of a degree-1 loop put each step ratio exactly at −1;
        // bisection through the generator recovers the winding
        let path = UnitaryPath::from_generator(
            |t| CMat::diagonal(&[c((TAU * t).cos(), (TAU * t).sin())]),
            2,
        )
        .unwrap();
        let w = wind(&path, true).unwrap();
        assert_eq!(w.value, 1.0);
        assert!(w.refinements > 0);
    }

    #[test]
    fn coarse_samples_without_generator_fail() {
        let grid = vec![0.0, 0.5, 1.0];
        let samples: Vec<CMat> = grid
            .iter()
            .map(|&t| CMat::diagonal(&[c((TAU * t).cos(), (TAU * t).sin())]))
            .collect();
        let path = UnitaryPath::from_samples(grid, samples).unwrap();
        assert!(matches!(wind(&path, true), Err(EngineError::StepTooCoarse { .. })));
    }

    #[test]
    fn spectral_flow_of_linear_crossing() {
        let path =
            HermitianPath::from_generator(|t| CMat::diagonal(&[c(2.0 * t - 1.0, 0.0)]), 24)
                .unwrap();
        let sf = spectral_flow_cayley(&path, false).unwrap();
        assert!((sf.value - 1.0).abs() < 1e-9);
        assert_eq!(spectral_flow_crossings(&path).unwrap(), 1);
    }

    #[test]
    fn spectral_flow_cancels_for_opposite_crossings() {
        let path = HermitianPath::from_generator(
            |t| CMat::diagonal(&[c(2.0 * t - 1.0, 0.0), c(1.0 - 2.0 * t, 0.0)]),
            24,
        )
        .unwrap();
        let sf = spectral_flow_cayley(&path, false).unwrap();
        assert!(sf.value.abs() < 1e-9);
        assert_eq!(spectral_flow_crossings(&path).unwrap(), 0);
    }

    #[test]
    fn constant_invertible_path_has_zero_flow() {
        let path = HermitianPath::from_generator(
            |_| CMat::diagonal(&[c(1.0, 0.0), c(-2.0, 0.0)]),
            8,
        )
        .unwrap();
        assert!(spectral_flow_cayley(&path, false).unwrap().value.abs() < 1e-12);
        assert_eq!(spectral_flow_crossings(&path).unwrap(), 0);
    }

    #[test]
    fn sine_loop_crossings_cancel() {
        let path = HermitianPath::from_generator(
            |t| CMat::diagonal(&[c((TAU * t).sin(), 0.0)]),
            64,
        )
        .unwrap();
        assert_eq!(spectral_flow_crossings(&path).unwrap(), 0);
    }

    #[test]
    fn half_crossing_endpoint_is_singular() {
        let path = HermitianPath::from_generator(|t| CMat::diagonal(&[c(t, 0.0)]), 16).unwrap();
        assert_eq!(spectral_flow_crossings(&path).unwrap_err(), EngineError::SingularEndpoint);
    }

    #[test]
    fn maslov_of_constant_pair_vanishes() {
        let space = HermitianSymplecticSpace::standard(2);
        let phi = CMat::diagonal(&[c(0.0, 1.0), c(1.0, 0.0)]);
        let l = Lagrangian::from_unitary(&phi, &space).unwrap();
        let r = Lagrangian::from_unitary(&CMat::identity(2), &space).unwrap();
        let path = LagrangianPairPath::from_samples(
            vec![0.0, 0.5, 1.0],
            vec![(l.clone(), r.clone()), (l.clone(), r.clone()), (l, r)],
        )
        .unwrap();
        assert_eq!(maslov(&path, &space, true).unwrap().value, 0.0);
    }

    #[test]
    fn maslov_scalar_loop_is_minus_two() {
        // Φf(t) = e^{4πit}, Φg = 1: wind 2, Maslov −2
        let space = scalar_space();
        let path = LagrangianPairPath::from_generator(
            {
                let space = HermitianSymplecticSpace::standard(1);
                move |t| {
                    let phi =
                        CMat::diagonal(&[c((2.0 * TAU * t).cos(), (2.0 * TAU * t).sin())]);
                    let f = Lagrangian::from_unitary(&phi, &space).unwrap();
                    let g = Lagrangian::from_unitary(&CMat::identity(1), &space).unwrap();
                    (f, g)
                }
            },
            32,
        )
        .unwrap();
        assert_eq!(maslov(&path, &space, true).unwrap().value, -2.0);
    }

    #[test]
    fn maslov_normalization_counts_intersection() {
        // Mas(e^{tγ} P e^{-tγ}, Q) over [-ε, ε] = dim(ker P ∩ im Q);
        // with Φ_P = I the kernel meets im Q once per −1 eigenvalue of Φ_Q.
        let m = 3;
        let space = HermitianSymplecticSpace::standard(m);
        let d = 2; // two −1 eigenvalues
        let phi_q = CMat::diagonal(&[c(-1.0, 0.0), c(-1.0, 0.0), c(0.3, -(1.0f64 - 0.09).sqrt())]);
        let eps = 0.05;
        let path = LagrangianPairPath::from_generator(
            {
                let space = HermitianSymplecticSpace::standard(m);
                let phi_q = phi_q.clone();
                move |s| {
                    let theta = -eps + 2.0 * eps * s;
                    let rot = space.gamma_rotation(theta);
                    let p = Lagrangian::from_unitary(&CMat::identity(m), &space)
                        .unwrap()
                        .transformed(&rot);
                    let q = Lagrangian::from_unitary(&phi_q, &space).unwrap();
                    (p, q)
                }
            },
            16,
        )
        .unwrap();
        let mas = maslov(&path, &space, false).unwrap();
        assert!((mas.value - d as f64).abs() < 1e-9, "got {}", mas.value);
    }

    #[test]
    fn triple_index_degenerate_cases_vanish() {
        let space = HermitianSymplecticSpace::standard(2);
        let p = Lagrangian::from_unitary(&CMat::diagonal(&[c(0.0, 1.0), c(1.0, 0.0)]), &space)
            .unwrap();
        let q = Lagrangian::from_unitary(
            &CMat::diagonal(&[c(0.6, 0.8), c(0.0, -1.0)]),
            &space,
        )
        .unwrap();
        let r = Lagrangian::from_unitary(&CMat::identity(2), &space).unwrap();
        assert!(triple_index(&p, &p, &r, &space).unwrap().abs() < 1e-12);
        assert!(triple_index(&p, &q, &q, &space).unwrap().abs() < 1e-12);
        let t = triple_index(&p, &q, &r, &space).unwrap();
        assert!(t.is_finite());
    }

    #[test]
    fn triple_index_branch_hit_is_reported() {
        let space = scalar_space();
        let p = Lagrangian::from_unitary(&CMat::diagonal(&[c(-1.0, 0.0)]), &space).unwrap();
        let q = Lagrangian::from_unitary(&CMat::identity(1), &space).unwrap();
        let r = Lagrangian::from_unitary(&CMat::diagonal(&[c(0.0, 1.0)]), &space).unwrap();
        // Φ(P)Φ(Q)* = −1 exactly
        assert_eq!(triple_index(&p, &q, &r, &space).unwrap_err(), EngineError::BranchHit);
    }

    #[test]
    fn path_additivity_is_structural() {
        // two open paths glued at t = 1/2
        let gen = |t: f64| {
            CMat::diagonal(&[
                c((1.7 * TAU * t).cos(), (1.7 * TAU * t).sin()),
                c((0.4 * TAU * t + 0.2).cos(), (0.4 * TAU * t + 0.2).sin()),
            ])
        };
        let p1 = UnitaryPath::from_samples(
            (0..=8).map(|i| i as f64 / 16.0).collect(),
            (0..=8).map(|i| gen(i as f64 / 16.0)).collect(),
        )
        .unwrap();
        let p2 = UnitaryPath::from_samples(
            (8..=16).map(|i| i as f64 / 16.0).collect(),
            (8..=16).map(|i| gen(i as f64 / 16.0)).collect(),
        )
        .unwrap();
        let whole = UnitaryPath::from_samples(
            (0..=16).map(|i| i as f64 / 16.0).collect(),
            (0..=16).map(|i| gen(i as f64 / 16.0)).collect(),
        )
        .unwrap();
        let w1 = wind(&p1, false).unwrap().value;
        let w2 = wind(&p2, false).unwrap().value;
        let w = wind(&whole, false).unwrap().value;
        assert!((w - w1 - w2).abs() < 1e-9);
    }
}
