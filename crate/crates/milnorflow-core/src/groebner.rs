//! Buchberger's algorithm for reduced Gröbner bases.
//!
//! Plain Buchberger is deliberate here: the ideals we see (Jacobian ideals
//! of quasihomogeneous polynomials) are small, and the simple algorithm is
//! easy to audit. Pair selection follows the normal strategy (smallest lcm
//! in the term order first); the product and chain criteria prune useless
//! pairs. The returned basis is reduced, monic and sorted ascending by
//! leading term, so the output is deterministic.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use crate::order::TermOrder;
use crate::poly::{Monomial, QuasiPolynomial};

/// A reduced Gröbner basis together with the order that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    generators: Vec<QuasiPolynomial>,
    order: TermOrder,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[QuasiPolynomial] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators.iter().map(|g| self.order.leading_monomial(g)).collect()
    }

    /// Re-check the Buchberger criterion: every S-polynomial of the basis
    /// reduces to zero. Used by tests; quadratic in the basis size.
    pub fn is_groebner(&self) -> bool {
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let s = s_polynomial(&self.generators[i], &self.generators[j], &self.order);
                if !normal_form(&s, &self.generators, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Fully reduce `p` modulo `basis`: no term of the result is divisible by
/// any leading monomial of the basis.
pub fn normal_form(
    p: &QuasiPolynomial,
    basis: &[QuasiPolynomial],
    order: &TermOrder,
) -> QuasiPolynomial {
    let lts: Vec<(&Monomial, &BigRational)> =
        basis.iter().map(|g| order.leading_term(g)).collect();
    let mut work = p.clone();
    let mut reduced = QuasiPolynomial::zero(p.nvars()).expect("arity checked upstream");
    while !work.is_zero() {
        let (lm, lc) = order.leading_term(&work);
        let lm = lm.clone();
        let lc = lc.clone();
        match lts.iter().position(|(m, _)| m.divides(&lm)) {
            Some(k) => {
                let factor = &lc / lts[k].1;
                let shift = lts[k].0.quotient_into(&lm);
                work = work.sub_scaled_shift(&factor, &shift, &basis[k]);
            }
            None => {
                // move the irreducible leading term to the remainder
                reduced = reduced.add(
                    &QuasiPolynomial::from_terms(p.nvars(), [(lm.clone(), lc.clone())])
                        .expect("arity checked upstream"),
                );
                work = work.sub_scaled_shift(
                    &lc,
                    &Monomial::constant(p.nvars()),
                    &QuasiPolynomial::from_terms(p.nvars(), [(lm, BigRational::one())])
                        .expect("arity checked upstream"),
                );
            }
        }
    }
    reduced
}

fn s_polynomial(f: &QuasiPolynomial, g: &QuasiPolynomial, order: &TermOrder) -> QuasiPolynomial {
    let (fm, fc) = order.leading_term(f);
    let (gm, gc) = order.leading_term(g);
    let l = fm.lcm(gm);
    let a = f.scale(&(BigRational::one() / fc));
    let fa = shift(&a, &fm.quotient_into(&l));
    let b = g.scale(&(BigRational::one() / gc));
    let gb = shift(&b, &gm.quotient_into(&l));
    fa.add(&gb.scale(&-BigRational::one()))
}

fn shift(p: &QuasiPolynomial, m: &Monomial) -> QuasiPolynomial {
    QuasiPolynomial::from_terms(p.nvars(), p.terms().map(|(mm, c)| (mm.mul(m), c.clone())))
        .expect("arity checked upstream")
}

/// Compute the reduced Gröbner basis of the ideal generated by `gens`.
///
/// Panics if `gens` is empty or contains the zero polynomial; callers are
/// expected to have dropped vanishing generators.
pub fn buchberger(gens: &[QuasiPolynomial], order: TermOrder) -> GroebnerBasis {
    assert!(!gens.is_empty(), "buchberger needs at least one generator");
    assert!(gens.iter().all(|g| !g.is_zero()), "zero generator");
    

    let mut basis: Vec<QuasiPolynomial> = gens.to_vec();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut done: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pending.push((i, j));
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest pair lcm first, index order breaking ties
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let la = pair_lcm(&basis, pending[a], &order);
                let lb = pair_lcm(&basis, pending[b], &order);
                order.compare(&la, &lb).then(pending[a].cmp(&pending[b]))
            })
            .expect("pending nonempty");
        let (i, j) = pending.swap_remove(best);
        done.push((i, j));

        let lt_i = order.leading_monomial(&basis[i]);
        let lt_j = order.leading_monomial(&basis[j]);
        // product criterion: coprime leading terms give a trivial S-pair
        if lt_i.is_coprime_with(lt_j) {
            continue;
        }
        // chain criterion: a third generator dividing the lcm whose pairs
        // with i and j are both settled makes this pair redundant
        let l = lt_i.lcm(lt_j);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && order.leading_monomial(&basis[k]).divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], &order);
        let nf = normal_form(&s, &basis, &order);
        if !nf.is_zero() {
            let new_idx = basis.len();
            basis.push(nf);
            for k in 0..new_idx {
                pending.push((k, new_idx));
            }
        }
    }

    reduce_basis(basis, order)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_lcm(basis: &[QuasiPolynomial], (i, j): (usize, usize), order: &TermOrder) -> Monomial {
    order.leading_monomial(&basis[i]).lcm(order.leading_monomial(&basis[j]))
}

/// Minimalize and tail-reduce, scale monic, sort by leading term.
fn reduce_basis(mut basis: Vec<QuasiPolynomial>, order: TermOrder) -> GroebnerBasis {
    // drop generators whose leading term another leading term divides
    let mut keep: Vec<bool> = alloc::vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lt_i = order.leading_monomial(&basis[i]);
            let lt_j = order.leading_monomial(&basis[j]);
            if lt_j.divides(lt_i) && (lt_i != lt_j || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<QuasiPolynomial> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();

    // tail-reduce each generator against the others
    for i in 0..minimal.len() {
        let g = minimal[i].clone();
        let others: Vec<QuasiPolynomial> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, h)| if j != i { Some(h.clone()) } else { None })
            .collect();
        let mut nf = normal_form(&g, &others, &order);
        let (_, lc) = order.leading_term(&nf);
        let inv = BigRational::one() / lc;
        nf = nf.scale(&inv);
        minimal[i] = nf;
    }

    minimal.sort_by(|a, b| order.compare(order.leading_monomial(a), order.leading_monomial(b)));
    GroebnerBasis { generators: minimal, order }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use alloc::vec;

    fn poly(s: &str, n: usize) -> QuasiPolynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn coprime_leading_terms_pass_through() {
        let gb = buchberger(&[poly("3*z0^2", 2), poly("3*z1^2", 2)], TermOrder::DegRevLex);
        assert_eq!(gb.generators(), &[poly("z1^2", 2), poly("z0^2", 2)]);
        assert!(gb.is_groebner());
    }

    #[test]
    fn linear_generators_reduce_to_variables() {
        let gb = buchberger(
            &[poly("2*z0", 3), poly("2*z1", 3), poly("2*z2", 3)],
            TermOrder::DegRevLex,
        );
        assert_eq!(gb.generators(), &[poly("z2", 3), poly("z1", 3), poly("z0", 3)]);
    }

    #[test]
    fn mixed_cubic_jacobian_weighted_order() {
        // one S-pair by hand: z1^2*(3z0^2+z1^3) - z0*(3z0*z1^2) = z1^5
        let gb = buchberger(
            &[poly("3*z0^2 + z1^3", 2), poly("3*z0*z1^2", 2)],
            TermOrder::weighted(&[3, 2]),
        );
        assert_eq!(
            gb.generators(),
            &[poly("z0^2 + 1/3*z1^3", 2), poly("z0*z1^2", 2), poly("z1^5", 2)]
        );
        assert!(gb.is_groebner());
    }

    #[test]
    fn mixed_cubic_jacobian_lex_matches_weighted() {
        let gb = buchberger(
            &[poly("3*z0^2 + z1^3", 2), poly("3*z0*z1^2", 2)],
            TermOrder::Lex,
        );
        let mut lts: Vec<_> = gb.leading_monomials().into_iter().cloned().collect();
        lts.sort();
        assert_eq!(lts, vec![Monomial(vec![0, 5]), Monomial(vec![1, 2]), Monomial(vec![2, 0])]);
    }

    #[test]
    fn normal_form_is_fully_reduced() {
        let order = TermOrder::DegRevLex;
        let gb = buchberger(&[poly("z0^2", 2), poly("z1^2", 2)], order.clone());
        let nf = normal_form(&poly("z0^3 + z0*z1 + z1^2 + 7", 2), gb.generators(), &order);
        assert_eq!(nf, poly("z0*z1 + 7", 2));
    }

    #[test]
    fn cyclic_style_system_closes() {
        // not quasihomogeneous input; the algorithm itself is generic
        let gb = buchberger(
            &[poly("z0 + z1", 2), poly("z0*z1 - 1", 2)],
            TermOrder::Lex,
        );
        assert!(gb.is_groebner());
        assert_eq!(gb.generators().len(), 2);
    }
}
