use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

/// `J_N(E; t)` as an exact Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesExact {
    pub n: u32,
    pub poly: LaurentPolynomial,
}

/// `t^N − t^j − t^{−j} + t^{−N}`, the expanded product of the two
/// half-integer sinh-type factors. Every exponent is an integer.
pub fn habiro_factor(n: u32, j: u32) -> LaurentPolynomial {
    let (n, j) = (n as i64, j as i64);
    LaurentPolynomial::from_terms([(n, 1), (j, -1), (-j, -1), (-n, 1)])
}

/// Cyclotomic sum `Σ_{k=0}^{N−1} Π_{j=1}^{k} (t^N − t^j − t^{−j} + t^{−N})`.
pub fn habiro_exact(n: i64) -> Result<JonesExact> {
    if n < 1 {
        return Err(Error::Domain(format!("colour N must be >= 1, got {n}")));
    }
    let n = u32::try_from(n).map_err(|_| Error::Domain(format!("colour N={n} too large")))?;
    let mut product = LaurentPolynomial::one();
    let mut sum = LaurentPolynomial::one();
    for k in 1..n {
        product = &product * &habiro_factor(n, k);
        sum = &sum + &product;
    }
    Ok(JonesExact { n, poly: sum })
}
