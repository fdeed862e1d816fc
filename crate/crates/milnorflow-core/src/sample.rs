//! Seeded random generators for matrices, paths and Lagrangians.
//!
//! Everything is driven by a ChaCha stream cipher, so a seed pins the
//! whole sample sequence across platforms and runs.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{herm_eig, orthonormalize_columns, CMat, TAU};
use crate::symplectic::{HermitianSymplecticSpace, Lagrangian};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..hi)
    }

    /// Complex Gaussian via Box-Muller.
    pub fn gaussian(&mut self) -> Complex64 {
        let u1 = 1.0 - self.rng.gen::<f64>();
        let u2 = self.rng.gen::<f64>();
        let r = Float::sqrt(-2.0 * Float::ln(u1));
        Complex64::new(r * Float::cos(TAU * u2), r * Float::sin(TAU * u2))
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> CMat {
        CMat::from_fn(rows, cols, |_, _| self.gaussian())
    }

    pub fn hermitian(&mut self, n: usize) -> CMat {
        self.matrix(n, n).hermitian_part()
    }

    /// Haar-ish unitary: orthonormalized Gaussian matrix.
    pub fn unitary(&mut self, n: usize) -> CMat {
        orthonormalize_columns(&self.matrix(n, n)).expect("Gaussian matrix has full rank")
    }

    /// A smooth unitary path t ↦ U₀ exp(i t H) with ‖H‖ ~ strength,
    /// returned as a closure suitable for path generators.
    pub fn unitary_generator(
        &mut self,
        n: usize,
        strength: f64,
    ) -> impl Fn(f64) -> CMat + 'static {
        let u0 = self.unitary(n);
        let h = self.hermitian(n).scale(Complex64::new(strength, 0.0));
        let eig = herm_eig(&h, true).expect("Hermitian eigendecomposition");
        let q = eig.vectors.expect("vectors requested");
        let values = eig.values;
        let q_adj = q.adjoint();
        move |t: f64| {
            let phases: Vec<Complex64> = values
                .iter()
                .map(|&l| Complex64::new(Float::cos(t * l), Float::sin(t * l)))
                .collect();
            u0.mul(&q.mul(&CMat::diagonal(&phases)).mul(&q_adj))
        }
    }

    /// A smooth Hermitian path interpolating two random endpoints with a
    /// sinusoidal bulge, as a closure.
    pub fn hermitian_generator(&mut self, n: usize) -> impl Fn(f64) -> CMat + 'static {
        let a0 = self.hermitian(n);
        let a1 = self.hermitian(n);
        let bump = self.hermitian(n);
        move |t: f64| {
            let s = Float::sin(core::f64::consts::PI * t);
            a0.scale(Complex64::new(1.0 - t, 0.0))
                .add(&a1.scale(Complex64::new(t, 0.0)))
                .add(&bump.scale(Complex64::new(0.35 * s, 0.0)))
        }
    }

    /// A random Lagrangian: the graph of a Haar-ish unitary.
    pub fn lagrangian(&mut self, space: &HermitianSymplecticSpace) -> Lagrangian {
        let phi = self.unitary(space.half_dim());
        Lagrangian::from_unitary(&phi, space).expect("graph of a unitary")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(42);
        let mut b = Sampler::new(42);
        let ua = a.unitary(4);
        let ub = b.unitary(4);
        assert_eq!(ua.max_abs_diff(&ub), 0.0);
    }

    #[test]
    fn unitary_generator_produces_unitaries() {
        let mut s = Sampler::new(7);
        let g = s.unitary_generator(3, 2.0);
        for &t in &[0.0, 0.3, 1.0] {
            assert!(g(t).unitarity_defect() < 1e-9);
        }
    }

    #[test]
    fn lagrangians_validate() {
        let mut s = Sampler::new(9);
        let space = HermitianSymplecticSpace::standard(3);
        for _ in 0..5 {
            let l = s.lagrangian(&space);
            assert!(
                l.frame().adjoint().mul(space.gamma()).mul(l.frame()).max_abs() < 1e-10
            );
        }
    }
}
