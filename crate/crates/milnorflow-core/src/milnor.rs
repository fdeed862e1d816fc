//! The Milnor algebra of an isolated quasihomogeneous singularity.
//!
//! For f with Jacobian ideal J = (∂f/∂z₀,…,∂f/∂zₙ), the Milnor algebra is
//! the quotient by J; because the Jacobian ideal of a quasihomogeneous f is
//! weighted-homogeneous, the local quotient and the graded global quotient
//! coincide, so we work in the polynomial ring throughout. The standard
//! monomials of a Gröbner basis of J span the quotient; each carries the
//! weight l(α) = Σ (αₖ+1)wₖ.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::groebner::GroebnerBasis;
use crate::poly::{Monomial, QuasiPolynomial};
use crate::weights::WeightSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MilnorError {
    /// All partial derivatives vanish.
    ZeroIdeal,
    /// Some variable has no pure power among the leading terms, so the
    /// quotient is infinite-dimensional.
    NonIsolatedSingularity { variable: usize },
    /// The Milnor product formula did not yield a non-negative integer.
    NonIntegralProduct,
}

impl fmt::Display for MilnorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MilnorError::ZeroIdeal => write!(f, "all partial derivatives vanish"),
            MilnorError::NonIsolatedSingularity { variable } => write!(
                f,
                "non-isolated singularity: no pure power of z{} among the leading terms",
                variable
            ),
            MilnorError::NonIntegralProduct => {
                write!(f, "weight product formula is not a non-negative integer")
            }
        }
    }
}

impl core::error::Error for MilnorError {}

/// The n+1 partial derivatives of f, zero entries dropped.
pub fn jacobian_ideal(f: &QuasiPolynomial) -> Result<Vec<QuasiPolynomial>, MilnorError> {
    assert!(!f.is_zero(), "jacobian of the zero polynomial");
    let gens: Vec<QuasiPolynomial> =
        (0..f.nvars()).map(|i| f.partial_derivative(i)).filter(|d| !d.is_zero()).collect();
    if gens.is_empty() {
        return Err(MilnorError::ZeroIdeal);
    }
    Ok(gens)
}

/// The monomial basis of the Milnor algebra: standard monomials of the
/// leading-term ideal with their l-values, sorted ascending by l-value and
/// then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorBasis {
    monomials: Vec<Monomial>,
    l_values: Vec<BigRational>,
    weights: WeightSystem,
}

impl MilnorBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn l_values(&self) -> &[BigRational] {
        &self.l_values
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.monomials.iter().zip(&self.l_values)
    }

    /// Number of variables minus one (the dimension n of the hypersurface).
    pub fn n(&self) -> usize {
        self.weights.nvars() - 1
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|x| x == m)
    }
}

/// l(α) = Σ (αₖ+1)wₖ, the weight of a basis monomial in the grading of the
/// Milnor algebra.
pub fn l_value(alpha: &Monomial, ws: &WeightSystem) -> BigRational {
    debug_assert_eq!(alpha.nvars(), ws.nvars());
    let num: u64 =
        alpha.0.iter().zip(ws.beta_i()).map(|(&a, &b)| (a as u64 + 1) * b).sum();
    BigRational::new(BigInt::from(num), BigInt::from(ws.beta()))
}

/// Enumerate the standard monomials of `gb` and attach l-values.
///
/// Errors with `NonIsolatedSingularity` when some variable has no pure
/// power among the leading terms (infinite quotient). A unit ideal yields
/// the empty basis (μ = 0, a regular point).
pub fn monomial_basis(gb: &GroebnerBasis, ws: &WeightSystem) -> Result<MilnorBasis, MilnorError> {
    let lts: Vec<Monomial> = gb.leading_monomials().into_iter().cloned().collect();
    let nvars = ws.nvars();

    if lts.iter().any(|m| m.is_constant()) {
        return Ok(MilnorBasis { monomials: Vec::new(), l_values: Vec::new(), weights: ws.clone() });
    }

    // box bounds: the minimal pure power of each variable in the staircase
    let mut bounds = Vec::with_capacity(nvars);
    for v in 0..nvars {
        let bound = lts
            .iter()
            .filter(|m| m.is_pure_power_of(v))
            .map(|m| m.0[v])
            .min()
            .ok_or(MilnorError::NonIsolatedSingularity { variable: v })?;
        bounds.push(bound);
    }

    let mut standard: Vec<(BigRational, Monomial)> = Vec::new();
    let mut exps = alloc::vec![0u32; nvars];
    'outer: loop {
        let m = Monomial(exps.clone());
        if !lts.iter().any(|lt| lt.divides(&m)) {
            standard.push((l_value(&m, ws), m));
        }
        // odometer over the box Π [0, boundᵥ)
        for v in (0..nvars).rev() {
            exps[v] += 1;
            if exps[v] < bounds[v] {
                continue 'outer;
            }
            exps[v] = 0;
        }
        break;
    }

    standard.sort_by(|(la, ma), (lb, mb)| la.cmp(lb).then_with(|| ma.cmp(mb)));
    let (l_values, monomials): (Vec<_>, Vec<_>) = standard.into_iter().unzip();
    Ok(MilnorBasis { monomials, l_values, weights: ws.clone() })
}

/// μ = number of basis monomials.
pub fn milnor_number(basis: &MilnorBasis) -> usize {
    basis.len()
}

/// The classical product formula μ = Π (β/βᵢ − 1), evaluated in exact
/// rational arithmetic. Serves as an independent oracle for
/// [`milnor_number`] on isolated quasihomogeneous inputs.
pub fn milnor_orlik_mu(ws: &WeightSystem) -> Result<u64, MilnorError> {
    let beta = BigRational::from_integer(BigInt::from(ws.beta()));
    let mut product = BigRational::one();
    for &b in ws.beta_i() {
        let factor = &beta / BigRational::from_integer(BigInt::from(b)) - BigRational::one();
        if factor.is_negative() {
            return Err(MilnorError::NonIntegralProduct);
        }
        product *= factor;
    }
    if !product.denom().is_one() {
        return Err(MilnorError::NonIntegralProduct);
    }
    u64::try_from(product.numer()).map_err(|_| MilnorError::NonIntegralProduct)
}
