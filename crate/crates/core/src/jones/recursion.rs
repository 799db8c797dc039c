use crate::error::{Error, Result};
use crate::jones::habiro_exact;
use crate::laurent::LaurentPolynomial;

fn t(e: i64) -> LaurentPolynomial {
    LaurentPolynomial::monomial(1, e)
}

fn one() -> LaurentPolynomial {
    LaurentPolynomial::one()
}

/// `D(t) = t^{2N+2} (t^N − 1)(t^{2N−3} − 1)`, which clears every denominator
/// of the inhomogeneous three-term recursion.
pub fn recursion_denominator(n: i64) -> LaurentPolynomial {
    &(&t(2 * n + 2) * &(&t(n) - &one())) * &(&t(2 * n - 3) - &one())
}

/// The recursion's coefficients, each already multiplied by `D(t)`:
/// `(D·inhomogeneous term, D·coeff of J_{N−1}, D·coeff of J_{N−2})`.
pub fn cleared_coefficients(n: i64) -> (LaurentPolynomial, LaurentPolynomial, LaurentPolynomial) {
    // t^{-N-1}(t^N + t)(t^{2N} − t) / (t^N − 1)
    let inhom = &(&(&t(n + 1) * &(&t(n) + &t(1))) * &(&t(2 * n) - &t(1))) * &(&t(2 * n - 3) - &one());
    // t^{-2N-2}(t^{N-1} − 1)^2 (t^{N-1} + 1)(t^4 + t^{4N} − t^{N+3} − t^{2N+1} − t^{2N+3} − t^{3N+1})
    //   / ((t^N − 1)(t^{2N−3} − 1))
    let quartic = LaurentPolynomial::from_terms([
        (4, 1),
        (4 * n, 1),
        (n + 3, -1),
        (2 * n + 1, -1),
        (2 * n + 3, -1),
        (3 * n + 1, -1),
    ]);
    let m = &t(n - 1) - &one();
    let prev = &(&(&m * &m) * &(&t(n - 1) + &one())) * &quartic;
    // (t^{N−2} − 1)(t^{2N−1} − 1) / ((t^N − 1)(t^{2N−3} − 1))
    let prev2 = &(&t(2 * n + 2) * &(&t(n - 2) - &one())) * &(&t(2 * n - 1) - &one());
    (inhom, prev, prev2)
}

/// `D·J_N − D·(inhomogeneous + c_1 J_{N−1} − c_2 J_{N−2})`, which must be the
/// zero polynomial when the recursion holds.
pub fn recursion_residual(n: i64) -> Result<LaurentPolynomial> {
    if n < 3 {
        return Err(Error::Domain(format!("recursion needs N >= 3, got {n}")));
    }
    let j0 = habiro_exact(n)?.poly;
    let j1 = habiro_exact(n - 1)?.poly;
    let j2 = habiro_exact(n - 2)?.poly;
    recursion_residual_from(n, &j0, &j1, &j2)
}

/// [`recursion_residual`] with `J_N, J_{N−1}, J_{N−2}` supplied by the caller.
pub fn recursion_residual_from(
    n: i64,
    j0: &LaurentPolynomial,
    j1: &LaurentPolynomial,
    j2: &LaurentPolynomial,
) -> Result<LaurentPolynomial> {
    if n < 3 {
        return Err(Error::Domain(format!("recursion needs N >= 3, got {n}")));
    }
    let (inhom, c1, c2) = cleared_coefficients(n);
    let lhs = &recursion_denominator(n) * j0;
    let rhs = &(&inhom + &(&c1 * j1)) - &(&c2 * j2);
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn residual_vanishes() {
        for n in 3..=10 {
            assert!(recursion_residual(n).unwrap().is_zero(), "N={n}");
        }
    }

    #[test]
    fn denominator_is_monic_and_nonzero() {
        for n in 3..=10 {
            let d = recursion_denominator(n);
            assert!(!d.is_zero());
            assert_eq!(d.coeff(d.max_exp().unwrap()), BigInt::from(1));
        }
    }

    #[test]
    fn small_colours_rejected() {
        assert!(recursion_residual(2).is_err());
    }

    #[test]
    fn residual_detects_a_wrong_polynomial() {
        // replacing J_{N-1} by J_{N-1} + 1 must break the identity
        let n = 5;
        let (inhom, c1, c2) = cleared_coefficients(n);
        let j1 = &habiro_exact(n - 1).unwrap().poly + &LaurentPolynomial::one();
        let lhs = &recursion_denominator(n) * &habiro_exact(n).unwrap().poly;
        let rhs = &(&inhom + &(&c1 * &j1)) - &(&c2 * &habiro_exact(n - 2).unwrap().poly);
        assert!(!(&lhs - &rhs).is_zero());
    }
}
