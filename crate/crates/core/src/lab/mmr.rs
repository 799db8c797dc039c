use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jones::habiro_exact;
use crate::laurent::TruncatedSeries;

/// Coefficients of `J_N(E; e^h) = Σ_j c_j(N) h^j` and their fit as
/// polynomials in `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct MmrTable {
    pub j_max: usize,
    pub n_set: Vec<u32>,
    pub order: usize,
    /// `c[j][i] = c_j(n_set[i])`
    pub c: Vec<Vec<BigRational>>,
    /// `fits[j][k]` is the coefficient of `N^k` in the interpolant of row `j`.
    pub fits: Vec<Vec<BigRational>>,
    /// Degree of each interpolant; `None` for an identically zero row.
    pub fitted_degree: Vec<Option<usize>>,
    /// Coefficient of `N^j` in row `j`.
    pub diagonal: Vec<BigRational>,
    /// Series coefficients of `1 / (3 − e^z − e^{−z})`.
    pub oracle: Vec<BigRational>,
}

impl MmrTable {
    pub fn degrees_bounded(&self) -> bool {
        self.fitted_degree
            .iter()
            .enumerate()
            .all(|(j, d)| d.is_none_or(|d| d <= j))
    }

    pub fn odd_rows_vanish(&self) -> bool {
        self.c
            .iter()
            .skip(1)
            .step_by(2)
            .all(|row| row.iter().all(Zero::is_zero))
    }

    pub fn diagonal_matches(&self) -> bool {
        self.diagonal == self.oracle
    }
}

/// `1 / (3 − e^z − e^{−z})` to order `d`.
pub fn diagonal_oracle(d: usize) -> Result<Vec<BigRational>> {
    let three = TruncatedSeries::constant(BigRational::from_integer(3.into()), d)?;
    let denom = &(&three - &TruncatedSeries::exp_pow(1, d)?) - &TruncatedSeries::exp_pow(-1, d)?;
    Ok(denom.invert()?.coeffs().to_vec())
}

fn factorial(j: usize) -> BigInt {
    (1..=j).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Newton interpolation through `(x_i, y_i)`, expanded to monomial coefficients.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form: p = dd[n−1]; p = p·(x − x_i) + dd[i]
    let mut poly = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut next = vec![BigRational::zero(); n];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += c;
            }
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// Extracts `c_j(N)` for `j <= j_max` over `n_set` exactly and fits each row
/// as a polynomial in `N`.
pub fn mmr_study(j_max: usize, n_set: &[u32], d: usize) -> Result<MmrTable> {
    if n_set.len() < j_max + 2 {
        return Err(Error::InsufficientData {
            needed: j_max + 2,
            got: n_set.len(),
        });
    }
    if d < j_max {
        return Err(Error::Domain(format!("series order {d} below j_max {j_max}")));
    }
    let mut sorted = n_set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[0] == 0 {
        return Err(Error::BadSchedule);
    }
    let oracle: Vec<BigRational> = diagonal_oracle(d)?.into_iter().take(j_max + 1).collect();
    let polys = n_set
        .par_iter()
        .map(|&n| habiro_exact(n as i64).map(|j| j.poly))
        .collect::<Result<Vec<_>>>()?;
    let c: Vec<Vec<BigRational>> = (0..=j_max)
        .map(|j| {
            let fact = factorial(j);
            polys
                .iter()
                .map(|p| BigRational::new(p.exponent_moment(j as u32), fact.clone()))
                .collect()
        })
        .collect();
    let xs: Vec<BigRational> = n_set.iter().map(|&n| BigRational::from_integer(n.into())).collect();
    let fits: Vec<Vec<BigRational>> = c.iter().map(|row| interpolate(&xs, row)).collect();
    let fitted_degree = fits.iter().map(|f| f.iter().rposition(|c| !c.is_zero())).collect();
    let diagonal = fits.iter().enumerate().map(|(j, f)| f[j].clone()).collect();
    Ok(MmrTable {
        j_max,
        n_set: n_set.to_vec(),
        order: d,
        c,
        fits,
        fitted_degree,
        diagonal,
        oracle,
    })
}
