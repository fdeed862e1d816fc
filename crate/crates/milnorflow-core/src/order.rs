//! Monomial term orders.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::poly::{Monomial, QuasiPolynomial};
use num_rational::BigRational;

/// A total order on monomials, admissible for Gröbner basis computation.
///
/// `z0` is the largest variable in the lexicographic comparisons. The
/// weighted variant grades by Σ aᵢwᵢ with the given positive integer
/// weights and breaks ties by reverse lexicographic comparison, so that
/// leading-term staircases align with the quasihomogeneous filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    DegRevLex,
    Lex,
    WeightedDegRevLex(Vec<u64>),
}

impl TermOrder {
    /// Weighted degrevlex with a weight system's βᵢ.
    pub fn weighted(beta_i: &[u64]) -> Self {
        TermOrder::WeightedDegRevLex(beta_i.to_vec())
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::DegRevLex => {
                a.degree().cmp(&b.degree()).then_with(|| revlex_tie(a, b))
            }
            TermOrder::WeightedDegRevLex(w) => {
                debug_assert_eq!(w.len(), a.nvars(), "weight vector arity mismatch");
                let da: u64 = a.0.iter().zip(w).map(|(&e, &w)| e as u64 * w).sum();
                let db: u64 = b.0.iter().zip(w).map(|(&e, &w)| e as u64 * w).sum();
                da.cmp(&db).then_with(|| revlex_tie(a, b))
            }
        }
    }

    /// Leading monomial of a nonzero polynomial.
    pub fn leading_monomial<'p>(&self, p: &'p QuasiPolynomial) -> &'p Monomial {
        p.monomials()
            .max_by(|a, b| self.compare(a, b))
            .expect("leading term of zero polynomial")
    }

    /// Leading monomial and coefficient of a nonzero polynomial.
    pub fn leading_term<'p>(&self, p: &'p QuasiPolynomial) -> (&'p Monomial, &'p BigRational) {
        let m = self.leading_monomial(p);
        (m, p.coefficient(m).expect("leading coefficient"))
    }
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::DegRevLex
    }
}

/// Reverse lexicographic tie-break: the monomial whose last differing
/// exponent is smaller is the larger one.
fn revlex_tie(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn degrevlex_grades_by_total_degree() {
        let o = TermOrder::DegRevLex;
        assert_eq!(o.compare(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
        // same degree: z0^2 > z0*z1 > z1^2
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_degree() {
        let o = TermOrder::Lex;
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[0, 3])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
    }

    #[test]
    fn weighted_order_uses_weighted_degree() {
        // weights (3,2): wdeg(z0^2) = 6 = wdeg(z1^3), revlex tie gives z0^2.
        let o = TermOrder::WeightedDegRevLex(vec![3, 2]);
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[0, 3])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn leading_monomial_of_jacobian_generator() {
        let p = crate::poly::parse_polynomial("3*z0^2 + z1^3", 2).unwrap();
        assert_eq!(TermOrder::DegRevLex.leading_monomial(&p), &m(&[0, 3]));
        assert_eq!(TermOrder::Lex.leading_monomial(&p), &m(&[2, 0]));
        assert_eq!(TermOrder::weighted(&[3, 2]).leading_monomial(&p), &m(&[2, 0]));
    }
}
