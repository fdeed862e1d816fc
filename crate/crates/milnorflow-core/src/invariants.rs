//! Closed-form invariants attached to the weight data of an isolated
//! quasihomogeneous singularity.
//!
//! Everything here is exact rational arithmetic on the l-values of the
//! Milnor basis; eigenvalues of the monodromy are carried as rotation
//! numbers (rationals mod 1) and only the characteristic polynomial ever
//! touches floating point.
//!
//! Conventions, fixed once:
//!
//! * spectrum entry γ = l(α) − 1;
//! * SF(α) = −2β(l(α) − 1), an even integer, and sf(α) = −SF(α)/2, so
//!   sf(0) = Σβᵢ − β is the Seidel number;
//! * variation-structure summand for α is (l mod 1, (−1)^{⌊l⌋+n});
//! * {x}' is the representative of x mod 1 in (−1/2, 1/2], with the
//!   boundary {x} = 1/2 mapped to +1/2.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::milnor::MilnorBasis;
use crate::poly::Monomial;
use crate::weights::WeightSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    /// β·l(α) failed to be an integer; the basis and weights disagree.
    OrderViolation { l: BigRational },
    /// A characteristic polynomial coefficient strayed from the integers.
    IntegralityViolation { index: usize },
    /// A spectral flow left the machine integer range.
    SpectralFlowOverflow,
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::OrderViolation { l } => {
                write!(f, "beta * l is not an integer for l = {} (inconsistent basis)", l)
            }
            InvariantError::IntegralityViolation { index } => {
                write!(f, "characteristic polynomial coefficient {} is not integral", index)
            }
            InvariantError::SpectralFlowOverflow => write!(f, "spectral flow out of i64 range"),
        }
    }
}

impl core::error::Error for InvariantError {}

/// The singularity spectrum as a divisor: sorted entries with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumDivisor {
    entries: Vec<BigRational>,
}

impl SpectrumDivisor {
    fn from_entries(mut entries: Vec<BigRational>) -> Self {
        entries.sort();
        SpectrumDivisor { entries }
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiset symmetry about a center: γ and 2c − γ have equal
    /// multiplicities. The spectrum of an isolated quasihomogeneous
    /// singularity is symmetric about (n−1)/2.
    pub fn is_symmetric_about(&self, center: &BigRational) -> bool {
        let two_c = center + center;
        let mut mirrored: Vec<BigRational> =
            self.entries.iter().map(|g| &two_c - g).collect();
        mirrored.sort();
        mirrored == self.entries
    }
}

/// SF(α) and sf(α) = −SF(α)/2 for every basis monomial, plus β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralFlowFamily {
    beta: u64,
    sf_upper: Vec<i64>,
    sf_lower: Vec<i64>,
}

impl SpectralFlowFamily {
    pub fn beta(&self) -> u64 {
        self.beta
    }

    /// SF(α), in basis order.
    pub fn sf_upper(&self) -> &[i64] {
        &self.sf_upper
    }

    /// sf(α) = −SF(α)/2, in basis order.
    pub fn sf_lower(&self) -> &[i64] {
        &self.sf_lower
    }

    pub fn len(&self) -> usize {
        self.sf_upper.len()
    }
}

/// One summand of the variation structure: an eigenvalue exp(2πi·rotation)
/// with a sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationStructure {
    summands: Vec<(BigRational, i8)>,
}

impl VariationStructure {
    /// (rotation, sign) pairs in basis order.
    pub fn summands(&self) -> &[(BigRational, i8)] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }
}

/// l(α) = Σ(αₖ+1)wₖ. Re-exported from the Milnor module for callers that
/// think of it as an invariant.
pub use crate::milnor::l_value;

/// The spectrum {l(α) − 1} as a divisor.
pub fn spectrum(basis: &MilnorBasis) -> SpectrumDivisor {
    SpectrumDivisor::from_entries(
        basis.l_values().iter().map(|l| l - BigRational::one()).collect(),
    )
}

/// β(l(α)−1) as an exact integer; errors if l and β are inconsistent.
pub fn d_value(l: &BigRational, beta: u64) -> Result<i64, InvariantError> {
    let scaled = l * BigRational::from_integer(BigInt::from(beta))
        - BigRational::from_integer(BigInt::from(beta));
    if !scaled.denom().is_one() {
        return Err(InvariantError::OrderViolation { l: l.clone() });
    }
    scaled.numer().to_i64().ok_or(InvariantError::SpectralFlowOverflow)
}

/// SF(α) = −2β(l(α)−1) and sf(α) = −SF(α)/2 for every basis monomial.
pub fn spectral_flows(basis: &MilnorBasis) -> Result<SpectralFlowFamily, InvariantError> {
    let beta = basis.weights().beta();
    let mut sf_upper = Vec::with_capacity(basis.len());
    let mut sf_lower = Vec::with_capacity(basis.len());
    for l in basis.l_values() {
        let d = d_value(l, beta)?;
        let sf = d.checked_mul(-2).ok_or(InvariantError::SpectralFlowOverflow)?;
        sf_upper.push(sf);
        sf_lower.push(d);
    }
    Ok(SpectralFlowFamily { beta, sf_upper, sf_lower })
}

/// Recover the spectrum from the flows: {−SF(α)/2β}. Must agree with
/// [`spectrum`] exactly.
pub fn spectrum_from_flows(family: &SpectralFlowFamily) -> SpectrumDivisor {
    let beta = BigInt::from(family.beta);
    SpectrumDivisor::from_entries(
        family
            .sf_upper
            .iter()
            .map(|&sf| BigRational::new(BigInt::from(-sf), &beta * BigInt::from(2)))
            .collect(),
    )
}

/// Variation structure: for each α the pair (l mod 1, (−1)^{⌊l⌋+n}).
pub fn variation_structure(basis: &MilnorBasis, n: usize) -> VariationStructure {
    let summands = basis
        .l_values()
        .iter()
        .map(|l| {
            let fl = l.floor();
            let rotation = l - &fl;
            let parity = (fl.to_integer() + BigInt::from(n)).mod_floor(&BigInt::from(2));
            let sign = if parity.is_zero() { 1 } else { -1 };
            (rotation, sign)
        })
        .collect();
    VariationStructure { summands }
}

/// The Seidel number m(f) = Σβᵢ − β. When nonzero (and n ≥ 2) the
/// symplectic monodromy has infinite order in the symplectic isotopy group.
pub fn seidel_number(ws: &WeightSystem) -> i64 {
    let sum: i64 = ws.beta_i().iter().map(|&b| b as i64).sum();
    sum - ws.beta() as i64
}

/// Self-check of the identity sf(α=0) = Σβᵢ − β. Always true for a valid
/// basis containing the constant monomial.
pub fn sf_zero_equals_seidel(basis: &MilnorBasis, ws: &WeightSystem) -> bool {
    let Some(pos) = basis.position(&Monomial::constant(ws.nvars())) else {
        return false;
    };
    match spectral_flows(basis) {
        Ok(family) => family.sf_lower()[pos] == seidel_number(ws),
        Err(_) => false,
    }
}

/// True iff the link is a rational homology sphere: no l(α) is an integer,
/// equivalently det(h* − id) ≠ 0.
pub fn qhs_link(basis: &MilnorBasis) -> bool {
    basis.l_values().iter().all(|l| !l.denom().is_one())
}

/// The modified fractional part {x}': the unique representative of x mod 1
/// in (−1/2, 1/2]. The boundary {x} = 1/2 maps to +1/2.
pub fn modified_frac(x: &BigRational) -> BigRational {
    let r = x - x.floor();
    if r <= BigRational::new(BigInt::one(), BigInt::from(2)) {
        r
    } else {
        r - BigRational::one()
    }
}

/// Σ over the subset of {2·l(α)}', the closed-form part of the eta
/// difference. The triple-index correction term is not included here; it is
/// only computable on explicit projections in the symplectic engine.
pub fn eta_fractional_sum(basis: &MilnorBasis, subset: &[Monomial]) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    subset
        .iter()
        .map(|m| {
            let pos = basis.position(m).expect("subset monomial not in basis");
            modified_frac(&(&two * &basis.l_values()[pos]))
        })
        .sum()
}

/// Same sum addressed by basis positions.
pub fn eta_fractional_sum_indices(basis: &MilnorBasis, subset: &[usize]) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    subset
        .iter()
        .map(|&i| modified_frac(&(&two * &basis.l_values()[i])))
        .sum()
}

/// The small-flow condition |SF(α)|/β < 1/2 for all α.
pub fn folg1_condition(family: &SpectralFlowFamily) -> bool {
    family.sf_upper.iter().all(|&sf| 2 * sf.unsigned_abs() < family.beta)
}

/// Monodromy eigenvalue rotations {l(α) mod 1}; validates β·l(α) ∈ ℤ,
/// which reflects that the monodromy has order dividing β.
pub fn monodromy_rotations(basis: &MilnorBasis) -> Result<Vec<BigRational>, InvariantError> {
    let beta = BigRational::from_integer(BigInt::from(basis.weights().beta()));
    basis
        .l_values()
        .iter()
        .map(|l| {
            if !(l * &beta).denom().is_one() {
                return Err(InvariantError::OrderViolation { l: l.clone() });
            }
            Ok(l - l.floor())
        })
        .collect()
}

/// Coefficients of Π (t − e^{2πi r}), leading coefficient first. The
/// monodromy is an integer matrix, so the coefficients must be integral;
/// deviations beyond 1e-6 raise `IntegralityViolation`.
pub fn characteristic_polynomial(
    rotations: &[BigRational],
) -> Result<Vec<Complex64>, InvariantError> {
    let tau = 2.0 * core::f64::consts::PI;
    let mut coeffs: Vec<Complex64> = alloc::vec![Complex64::new(1.0, 0.0)];
    for r in rotations {
        let phase = tau * r.to_f64().expect("rotation fits in f64");
        let root = Complex64::new(Float::cos(phase), Float::sin(phase));
        let mut next = alloc::vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * root;
        }
        coeffs = next;
    }
    for (index, c) in coeffs.iter().enumerate() {
        let nearest = Float::round(c.re);
        let dev = Float::hypot(c.re - nearest, c.im);
        if dev > 1e-6 {
            return Err(InvariantError::IntegralityViolation { index });
        }
    }
    Ok(coeffs)
}
