//! Numerical verification of the spectral-flow and eta formulas on the
//! explicit finite-dimensional boundary-condition model.
//!
//! The model lives on the standard Hermitian symplectic space of dimension
//! 2μ. Each basis monomial α contributes an integer d(α) = β(l(α)−1); the
//! circle action moves the graph of diag(e^{4πi d_j t}) against the fixed
//! coordinate Lagrangian. The Maslov index of the full loop must equal
//! −Σ 2d_j = −2βΣ(l(α)−1), the per-monomial loops must reproduce each
//! SF(α) = −2d(α) individually, and the trace-log of the action evaluated
//! at t = 1/β must reproduce the fractional eta sum Σ{2l(α)}'.
//!
//! The stretched legs of the original path contribute no spectral flow
//! (their intersection dimensions are constant in the stretching
//! parameter), so the finite block on which all motion happens is the
//! whole model. The eigenframe basis plays the role of the orthonormal
//! monomial frame.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::invariants::{self, InvariantError};
use crate::linalg::{CMat, TAU};
use crate::milnor::MilnorBasis;
use crate::symplectic::{
    maslov, EngineError, HermitianSymplecticSpace, Lagrangian, LagrangianPairPath,
};

#[derive(Debug)]
pub enum VerifierError {
    /// Regular point: there is nothing to verify.
    EmptyBasis,
    /// Explicit grids below the Nyquist-style bound are rejected here;
    /// callers that want auto-refinement raise the grid themselves.
    GridBelowNyquist { requested: usize, required: usize },
    Engine(EngineError),
    Invariant(InvariantError),
}

impl fmt::Display for VerifierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifierError::EmptyBasis => write!(f, "empty Milnor basis (regular point)"),
            VerifierError::GridBelowNyquist { requested, required } => write!(
                f,
                "grid of {} samples is below the branch-tracking bound {}",
                requested, required
            ),
            VerifierError::Engine(e) => write!(f, "{}", e),
            VerifierError::Invariant(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for VerifierError {}

impl From<EngineError> for VerifierError {
    fn from(e: EngineError) -> Self {
        VerifierError::Engine(e)
    }
}

impl From<InvariantError> for VerifierError {
    fn from(e: InvariantError) -> Self {
        VerifierError::Invariant(e)
    }
}

/// The finite-dimensional circle-action model of a singularity.
pub struct CircleActionModel {
    d_values: Vec<i64>,
    split_k: usize,
    space: HermitianSymplecticSpace,
    reference: Lagrangian,
}

impl CircleActionModel {
    pub fn d_values(&self) -> &[i64] {
        &self.d_values
    }

    pub fn split_k(&self) -> usize {
        self.split_k
    }

    pub fn space(&self) -> &HermitianSymplecticSpace {
        &self.space
    }

    pub fn reference(&self) -> &Lagrangian {
        &self.reference
    }

    pub fn mu(&self) -> usize {
        self.d_values.len()
    }
}

/// Build the model: d_j = β(l(α_j)−1) in basis order (ascending l), the
/// standard space of dimension 2μ, and the first-coordinate reference
/// Lagrangian. `k` records how many directions sit in the boundary-image
/// block; both blocks rotate identically, so results never depend on it.
pub fn build_model(basis: &MilnorBasis, k: usize) -> Result<CircleActionModel, VerifierError> {
    let mu = basis.len();
    if mu == 0 {
        return Err(VerifierError::EmptyBasis);
    }
    assert!(k <= mu, "split k out of range");
    let beta = basis.weights().beta();
    let d_values: Vec<i64> = basis
        .l_values()
        .iter()
        .map(|l| invariants::d_value(l, beta))
        .collect::<Result<_, _>>()?;
    let space = HermitianSymplecticSpace::standard(mu);
    let reference = coordinate_lagrangian(&space);
    Ok(CircleActionModel { d_values, split_k: k, space, reference })
}

/// The span of the first μ coordinates, which is the graph of the identity.
fn coordinate_lagrangian(space: &HermitianSymplecticSpace) -> Lagrangian {
    let m = space.half_dim();
    let frame = CMat::from_fn(2 * m, m, |r, c| {
        if r == c {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Lagrangian::new(frame, space).expect("coordinate frame is Lagrangian in the standard space")
}

/// Smallest admissible sample count for a loop with the given d values.
pub fn nyquist_samples(d_values: &[i64]) -> usize {
    let max_d = d_values.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0) as usize;
    4 * max_d + 8
}

fn rotation_diag(d_values: &[i64], selected: Option<usize>, t: f64) -> Vec<Complex64> {
    d_values
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            let active = selected.map_or(true, |sel| sel == j);
            if active {
                let phase = 2.0 * TAU * d as f64 * t;
                Complex64::new(Float::cos(phase), Float::sin(phase))
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect()
}

/// The closed loop of Lagrangian pairs: graph of diag(e^{4πi d_j t})
/// against the fixed reference, sampled at t_i = i/N. `selected` restricts
/// the rotation to a single coordinate (per-monomial loop).
pub fn action_loop(
    model: &CircleActionModel,
    samples: usize,
    selected: Option<usize>,
) -> Result<LagrangianPairPath, VerifierError> {
    let active: Vec<i64> = match selected {
        Some(j) => alloc::vec![model.d_values[j]],
        None => model.d_values.clone(),
    };
    let required = nyquist_samples(&active);
    if samples < required {
        return Err(VerifierError::GridBelowNyquist { requested: samples, required });
    }
    let d_values = model.d_values.clone();
    let space = HermitianSymplecticSpace::standard(model.mu());
    let reference = model.reference.clone();
    let path = LagrangianPairPath::from_generator(
        move |t| {
            let phi = CMat::diagonal(&rotation_diag(&d_values, selected, t));
            let moving =
                Lagrangian::from_unitary(&phi, &space).expect("diagonal unitary graph");
            (moving, reference.clone())
        },
        samples,
    )?;
    Ok(path)
}

/// One verification outcome: an exact formula value against the numeric
/// evaluation, with the grid it used.
#[derive(Clone, Debug)]
pub struct VerificationRecord {
    pub label: String,
    /// Exact formula value.
    pub formula: BigRational,
    /// Numeric evaluation.
    pub numeric: f64,
    pub abs_error: f64,
    /// Samples used by the numeric side (subset size for the eta record).
    pub grid: usize,
    /// Grid was raised to the branch-tracking bound.
    pub grid_raised: bool,
    /// Step bisections performed inside the winding evaluation.
    pub refinements: usize,
    pub pass: bool,
}

impl VerificationRecord {
    fn from_loop(
        label: String,
        formula: i64,
        numeric: f64,
        grid: usize,
        grid_raised: bool,
        refinements: usize,
        tol: f64,
    ) -> Self {
        let abs_error = Float::abs(numeric - formula as f64);
        let pass = abs_error < tol && Float::round(numeric) as i64 == formula;
        VerificationRecord {
            label,
            formula: BigRational::from_integer(BigInt::from(formula)),
            numeric,
            abs_error,
            grid,
            grid_raised,
            refinements,
            pass,
        }
    }
}

fn effective_grid(requested: Option<usize>, required: usize) -> (usize, bool) {
    match requested {
        Some(n) if n >= required => (n, false),
        Some(_) => (required, true),
        None => (required, false),
    }
}

/// Check the full-loop spectral-flow formula: the Maslov index of the
/// circle-action loop equals −Σ 2d_j.
pub fn verify_sf_theorem(
    basis: &MilnorBasis,
    grid: Option<usize>,
    tol: f64,
) -> Result<VerificationRecord, VerifierError> {
    let model = build_model(basis, 0)?;
    let formula: i64 = -2 * model.d_values().iter().sum::<i64>();
    let (n, raised) = effective_grid(grid, nyquist_samples(model.d_values()));
    let path = action_loop(&model, n, None)?;
    let mas = maslov(&path, model.space(), true)?;
    Ok(VerificationRecord::from_loop(
        String::from("sf-theorem-full-loop"),
        formula,
        mas.raw,
        n,
        raised,
        mas.refinements,
        tol,
    ))
}

/// Check SF(α) = −2d(α) for a single basis monomial via the loop that
/// rotates only its coordinate.
pub fn verify_sf_per_monomial(
    basis: &MilnorBasis,
    index: usize,
    grid: Option<usize>,
    tol: f64,
) -> Result<VerificationRecord, VerifierError> {
    let model = build_model(basis, 0)?;
    assert!(index < model.mu(), "monomial index out of range");
    let formula = -2 * model.d_values()[index];
    let (n, raised) = effective_grid(grid, nyquist_samples(&[model.d_values()[index]]));
    let path = action_loop(&model, n, Some(index))?;
    let mas = maslov(&path, model.space(), true)?;
    Ok(VerificationRecord::from_loop(
        format!("sf-monomial-{}", basis.monomials()[index].render()),
        formula,
        mas.raw,
        n,
        raised,
        mas.refinements,
        tol,
    ))
}

/// Check the fractional eta sum: (1/2πi) tr log diag(e^{4πi d_j/β}) over
/// the subset equals Σ {2l(α)}'. Entries whose phase lands exactly at −1
/// (the branch boundary) are evaluated exactly; everything else goes
/// through the floating logarithm.
pub fn verify_eta_fractional(
    basis: &MilnorBasis,
    subset: &[usize],
    tol: f64,
) -> Result<VerificationRecord, VerifierError> {
    if basis.is_empty() && !subset.is_empty() {
        return Err(VerifierError::EmptyBasis);
    }
    let beta = basis.weights().beta();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));

    let mut exact_part = BigRational::zero();
    let mut float_part = 0.0f64;
    for &j in subset {
        let d = invariants::d_value(&basis.l_values()[j], beta)?;
        // rotation number 2d/β mod 1, exactly
        let two_d = BigRational::new(BigInt::from(2 * d), BigInt::from(beta));
        let frac = &two_d - two_d.floor();
        if frac == half {
            exact_part += &half;
        } else {
            let phase = TAU * frac.to_f64().expect("small rational");
            let z = Complex64::new(Float::cos(phase), Float::sin(phase));
            float_part += Float::atan2(z.im, z.re) / TAU;
        }
    }
    let formula = invariants::eta_fractional_sum_indices(basis, subset);
    let numeric = float_part + exact_part.to_f64().expect("half-integer sum");
    let abs_error = Float::abs(numeric - formula.to_f64().expect("small rational"));
    // at the branch boundary both sides are exact, so equality is exact
    let boundary_only = float_part == 0.0;
    let pass = if boundary_only {
        exact_part == formula
    } else {
        abs_error < tol
    };
    Ok(VerificationRecord {
        label: String::from("eta-fractional-sum"),
        formula,
        numeric,
        abs_error,
        grid: subset.len(),
        grid_raised: false,
        refinements: 0,
        pass,
    })
}

/// Bundle: the full-loop check, one per-monomial check per basis element,
/// and the eta check on the full basis.
pub fn verify_all(
    basis: &MilnorBasis,
    grid: Option<usize>,
    tol: f64,
) -> Result<Vec<VerificationRecord>, VerifierError> {
    let mut records = Vec::with_capacity(basis.len() + 2);
    records.push(verify_sf_theorem(basis, grid, tol)?);
    for j in 0..basis.len() {
        records.push(verify_sf_per_monomial(basis, j, grid, tol)?);
    }
    let all: Vec<usize> = (0..basis.len()).collect();
    records.push(verify_eta_fractional(basis, &all, 1e-9)?);
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::milnor::{jacobian_ideal, monomial_basis};
    use crate::order::TermOrder;
    use crate::poly::parse_polynomial;
    use crate::weights::infer_weights;

    fn basis_of(f: &str, n: usize) -> MilnorBasis {
        let p = parse_polynomial(f, n).unwrap();
        let ws = infer_weights(&p).unwrap();
        let gens = jacobian_ideal(&p).unwrap();
        let gb = buchberger(&gens, TermOrder::weighted(ws.beta_i()));
        monomial_basis(&gb, &ws).unwrap()
    }

    #[test]
    fn model_d_values() {
        let b = basis_of("z0^3+z1^3", 2);
        let m = build_model(&b, 0).unwrap();
        assert_eq!(m.d_values(), &[-1, 0, 0, 1]);
        let b = basis_of("z0^2+z1^2+z2^2", 3);
        let m = build_model(&b, 0).unwrap();
        assert_eq!(m.d_values(), &[1]);
        let b = basis_of("z0^3+z0*z1^3", 2);
        let m = build_model(&b, 0).unwrap();
        assert_eq!(m.d_values(), &[-4, -2, -1, 0, 1, 2, 4]);
    }

    #[test]
    fn full_loop_matches_formula_on_worked_examples() {
        for (f, n, expected) in [
            ("z0^3+z1^3", 2, 0i64),
            ("z0^2+z1^2+z2^2", 3, -2),
            ("z0^3+z0*z1^3", 2, 0),
        ] {
            let b = basis_of(f, n);
            let rec = verify_sf_theorem(&b, None, 1e-6).unwrap();
            assert!(rec.pass, "{}: {:?}", f, rec);
            assert_eq!(rec.formula, BigRational::from_integer(BigInt::from(expected)));
        }
    }

    #[test]
    fn per_monomial_loops_match_each_sf() {
        let b = basis_of("z0^3+z1^3", 2);
        let fam = crate::invariants::spectral_flows(&b).unwrap();
        for j in 0..b.len() {
            let rec = verify_sf_per_monomial(&b, j, None, 1e-6).unwrap();
            assert!(rec.pass, "{:?}", rec);
            assert_eq!(
                rec.formula,
                BigRational::from_integer(BigInt::from(fam.sf_upper()[j]))
            );
        }
    }

    #[test]
    fn eta_fractional_matches_closed_form() {
        let b = basis_of("z0^3+z1^3", 2);
        let all: Vec<usize> = (0..b.len()).collect();
        let rec = verify_eta_fractional(&b, &all, 1e-9).unwrap();
        assert!(rec.pass, "{:?}", rec);
        assert!(rec.formula.is_zero());

        let b = basis_of("z0^3+z0*z1^3", 2);
        let rec = verify_eta_fractional(&b, &[0], 1e-9).unwrap();
        assert!(rec.pass);
        assert_eq!(rec.formula, BigRational::new(BigInt::from(1), BigInt::from(9)));

        let rec = verify_eta_fractional(&b, &[], 1e-9).unwrap();
        assert!(rec.pass);
        assert!(rec.formula.is_zero());
    }

    #[test]
    fn eta_branch_boundary_is_exact() {
        // z0^4 + z1^2: l-values 3/4, 1, 5/4; the entries 2l = 3/2, 5/2 land
        // exactly on the branch boundary and must come out exact
        let b = basis_of("z0^4+z1^2", 2);
        let all: Vec<usize> = (0..b.len()).collect();
        let rec = verify_eta_fractional(&b, &all, 1e-9).unwrap();
        assert!(rec.pass);
        assert_eq!(rec.formula, BigRational::from_integer(BigInt::from(1)));
        assert_eq!(rec.abs_error, 0.0);
    }

    #[test]
    fn split_k_does_not_change_the_full_loop() {
        let b = basis_of("z0^3+z0*z1^3", 2);
        let mut values = Vec::new();
        for k in [0, b.len().div_ceil(2), b.len()] {
            let model = build_model(&b, k).unwrap();
            let n = nyquist_samples(model.d_values());
            let path = action_loop(&model, n, None).unwrap();
            let mas = maslov(&path, model.space(), true).unwrap();
            values.push(mas.value);
        }
        assert_eq!(values[0], values[1]);
        assert_eq!(values[1], values[2]);
    }

    #[test]
    fn full_loop_equals_sum_of_per_monomial_loops() {
        let b = basis_of("z0^3+z1^3", 2);
        let full = verify_sf_theorem(&b, None, 1e-6).unwrap();
        let mut sum = 0.0;
        for j in 0..b.len() {
            sum += verify_sf_per_monomial(&b, j, None, 1e-6).unwrap().numeric;
        }
        assert!((full.numeric - sum).abs() < 1e-6);
    }

    #[test]
    fn grid_robustness_under_doubling() {
        let b = basis_of("z0^3+z1^3", 2);
        let n = {
            let model = build_model(&b, 0).unwrap();
            nyquist_samples(model.d_values())
        };
        let r1 = verify_sf_theorem(&b, Some(n), 1e-6).unwrap();
        let r2 = verify_sf_theorem(&b, Some(2 * n), 1e-6).unwrap();
        assert!(r1.pass && r2.pass);
        assert_eq!(Float::round(r1.numeric), Float::round(r2.numeric));
    }

    #[test]
    fn low_grids_are_raised_and_noted() {
        let b = basis_of("z0^3+z1^3", 2);
        let rec = verify_sf_theorem(&b, Some(3), 1e-6).unwrap();
        assert!(rec.pass);
        assert!(rec.grid_raised);
        assert!(rec.grid >= 12);
    }

    #[test]
    fn action_loop_rejects_sub_nyquist_grids() {
        let b = basis_of("z0^3+z1^3", 2);
        let model = build_model(&b, 0).unwrap();
        assert!(matches!(
            action_loop(&model, 3, None),
            Err(VerifierError::GridBelowNyquist { .. })
        ));
    }

    #[test]
    fn empty_basis_cannot_be_verified() {
        let b = basis_of("z0+z1", 2);
        assert!(matches!(build_model(&b, 0), Err(VerifierError::EmptyBasis)));
    }
}
