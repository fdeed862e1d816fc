//! Quasihomogeneous weight systems.
//!
//! A polynomial f is quasihomogeneous for positive integers
//! (β₀,…,βₙ; β) when every exponent vector a of f satisfies
//! Σ aᵢβᵢ = β. Inference solves this linear system exactly: Gaussian
//! elimination over the rationals on the homogeneous system
//! {Σ aᵢβᵢ − β = 0}, then the solution ray is scaled to coprime positive
//! integers. A one-dimensional positive ray has a unique normalized point,
//! so the result is canonical.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, QuasiPolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightError {
    /// The linear system has no strictly positive solution.
    NotQuasihomogeneous,
    /// The solution space has dimension > 1; weights must be supplied.
    AmbiguousWeights,
    /// Weights must be strictly positive.
    NonPositiveWeight,
    /// Normalized weights exceed the machine-integer range.
    WeightOverflow,
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::NotQuasihomogeneous => {
                write!(f, "polynomial is not quasihomogeneous for any positive weights")
            }
            WeightError::AmbiguousWeights => {
                write!(f, "weight system is underdetermined; supply weights explicitly")
            }
            WeightError::NonPositiveWeight => write!(f, "weights must be strictly positive"),
            WeightError::WeightOverflow => write!(f, "normalized weights out of range"),
        }
    }
}

impl core::error::Error for WeightError {}

/// The quasihomogeneity data (β₀,…,βₙ; β), stored gcd-normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    beta_i: Vec<u64>,
    beta: u64,
}

impl WeightSystem {
    /// Construct from raw integers; normalizes the overall gcd to 1.
    pub fn new(beta_i: Vec<u64>, beta: u64) -> Result<Self, WeightError> {
        if beta == 0 || beta_i.iter().any(|&b| b == 0) {
            return Err(WeightError::NonPositiveWeight);
        }
        let mut g = beta;
        for &b in &beta_i {
            g = g.gcd(&b);
        }
        Ok(WeightSystem { beta_i: beta_i.iter().map(|b| b / g).collect(), beta: beta / g })
    }

    pub fn beta_i(&self) -> &[u64] {
        &self.beta_i
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn nvars(&self) -> usize {
        self.beta_i.len()
    }

    /// wᵢ = βᵢ/β as exact rationals.
    pub fn weights(&self) -> Vec<BigRational> {
        self.beta_i
            .iter()
            .map(|&b| BigRational::new(BigInt::from(b), BigInt::from(self.beta)))
            .collect()
    }

    /// Σ wᵢ, the l-value of the constant monomial.
    pub fn weight_sum(&self) -> BigRational {
        let s: u64 = self.beta_i.iter().sum();
        BigRational::new(BigInt::from(s), BigInt::from(self.beta))
    }

    /// Weighted degree Σ aᵢβᵢ of a monomial, as an integer multiple of 1/β.
    pub fn int_degree(&self, m: &Monomial) -> u64 {
        debug_assert_eq!(m.nvars(), self.beta_i.len());
        m.0.iter().zip(&self.beta_i).map(|(&a, &b)| a as u64 * b).sum()
    }

    /// Weighted degree Σ aᵢwᵢ as a rational.
    pub fn degree(&self, m: &Monomial) -> BigRational {
        BigRational::new(BigInt::from(self.int_degree(m)), BigInt::from(self.beta))
    }
}

/// True iff every monomial of `poly` has weighted degree β under `ws`.
pub fn check_weights(poly: &QuasiPolynomial, ws: &WeightSystem) -> bool {
    debug_assert_eq!(poly.nvars(), ws.nvars());
    poly.monomials().all(|m| ws.int_degree(m) == ws.beta())
}

/// True iff every monomial of `poly` has weighted degree `target`·(1/β);
/// used to check that ∂f/∂zᵢ is quasihomogeneous of degree β − βᵢ.
pub fn check_weighted_degree(poly: &QuasiPolynomial, ws: &WeightSystem, target: u64) -> bool {
    poly.monomials().all(|m| ws.int_degree(m) == target)
}

/// Infer the unique normalized weight system of a quasihomogeneous
/// polynomial, solving Σ aᵢβᵢ = β for every exponent vector a.
pub fn infer_weights(poly: &QuasiPolynomial) -> Result<WeightSystem, WeightError> {
    assert!(!poly.is_zero(), "cannot infer weights of the zero polynomial");
    let n = poly.nvars();
    // Homogeneous system in the unknowns (β₀,…,βₙ, β): one row per monomial.
    let mut rows: Vec<Vec<BigRational>> = poly
        .monomials()
        .map(|m| {
            let mut row: Vec<BigRational> =
                m.0.iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect();
            row.push(-BigRational::one());
            row
        })
        .collect();
    let ncols = n + 1;

    // Row-reduce to echelon form, tracking pivot columns.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for c in col..ncols {
            let v = &rows[rank][c] / &inv;
            rows[rank][c] = v;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let v = &rows[r][c] - &factor * &rows[rank][c];
                    rows[r][c] = v;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    let nullity = ncols - rank;
    if nullity == 0 {
        return Err(WeightError::NotQuasihomogeneous);
    }
    if nullity > 1 {
        return Err(WeightError::AmbiguousWeights);
    }

    // One free column: build the generating solution with free value 1.
    let free_col = (0..ncols).find(|c| !pivot_cols.contains(c)).expect("free column exists");
    let mut sol = vec![BigRational::zero(); ncols];
    sol[free_col] = BigRational::one();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        sol[pc] = -rows[r][free_col].clone();
    }

    // Scale to a primitive integer vector.
    let mut denom_lcm = BigInt::one();
    for v in &sol {
        denom_lcm = denom_lcm.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> =
        sol.iter().map(|v| (v * BigRational::from_integer(denom_lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return Err(WeightError::NotQuasihomogeneous);
    }
    for v in &mut ints {
        *v = &*v / &g;
    }
    if ints.iter().all(|v| v.is_negative()) {
        for v in &mut ints {
            *v = -&*v;
        }
    }
    if !ints.iter().all(|v| v.is_positive()) {
        return Err(WeightError::NotQuasihomogeneous);
    }

    let to_u64 = |v: &BigInt| u64::try_from(v).map_err(|_| WeightError::WeightOverflow);
    let beta = to_u64(&ints[n])?;
    let beta_i = ints[..n].iter().map(to_u64).collect::<Result<Vec<_>, _>>()?;
    WeightSystem::new(beta_i, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ws(beta_i: &[u64], beta: u64) -> WeightSystem {
        WeightSystem::new(beta_i.to_vec(), beta).unwrap()
    }

    #[test]
    fn infers_fermat_cubic_weights() {
        let p = parse_polynomial("z0^3+z1^3", 2).unwrap();
        assert_eq!(infer_weights(&p).unwrap(), ws(&[1, 1], 3));
    }

    #[test]
    fn infers_sum_of_squares_weights() {
        let p = parse_polynomial("z0^2+z1^2+z2^2", 3).unwrap();
        assert_eq!(infer_weights(&p).unwrap(), ws(&[1, 1, 1], 2));
    }

    #[test]
    fn infers_mixed_weights() {
        let p = parse_polynomial("z0^3+z0*z1^3", 2).unwrap();
        assert_eq!(infer_weights(&p).unwrap(), ws(&[3, 2], 9));
    }

    #[test]
    fn single_monomial_is_ambiguous() {
        let p = parse_polynomial("z0^3", 2).unwrap();
        assert_eq!(infer_weights(&p).unwrap_err(), WeightError::AmbiguousWeights);
    }

    #[test]
    fn inhomogeneous_polynomial_is_rejected() {
        let p = parse_polynomial("z0^3+z0^2+z1^7", 2).unwrap();
        assert_eq!(infer_weights(&p).unwrap_err(), WeightError::NotQuasihomogeneous);
    }

    #[test]
    fn check_weights_examples() {
        let p = parse_polynomial("z0^3+z1^3", 2).unwrap();
        assert!(check_weights(&p, &ws(&[1, 1], 3)));
        assert!(!check_weights(&p, &ws(&[1, 2], 3)));
        let q = parse_polynomial("z0^3+z0*z1^3", 2).unwrap();
        assert!(check_weights(&q, &ws(&[3, 2], 9)));
    }

    #[test]
    fn construction_normalizes_gcd() {
        assert_eq!(ws(&[2, 2], 6), ws(&[1, 1], 3));
    }

    #[test]
    fn derivative_degree_drops_by_beta_i() {
        let p = parse_polynomial("z0^3+z0*z1^3", 2).unwrap();
        let w = infer_weights(&p).unwrap();
        for i in 0..2 {
            let d = p.partial_derivative(i);
            assert!(check_weighted_degree(&d, &w, w.beta() - w.beta_i()[i]));
        }
    }

    proptest::proptest! {
        /// Whenever inference succeeds, the returned system checks out and
        /// is primitive and positive.
        #[test]
        fn inferred_weights_validate(exps in proptest::collection::vec(
            proptest::collection::vec(0u32..6, 3), 1..6))
        {
            let p = QuasiPolynomial::from_terms(3, exps.into_iter().map(|e| {
                (Monomial(e), BigRational::one())
            })).unwrap();
            if p.is_zero() { return Ok(()); }
            if let Ok(w) = infer_weights(&p) {
                proptest::prop_assert!(check_weights(&p, &w));
                let mut g = w.beta();
                for &b in w.beta_i() { g = g.gcd(&b); }
                proptest::prop_assert_eq!(g, 1);
            }
        }
    }
}
