use crate::error::{Error, Result};
use crate::mp::{self, Complex, Real, GUARD_BITS};

/// `J_N(E; exp(2πi/N)) = Σ_k Π_{j≤k} (2 − 2cos(2πj/N))`, summed in real
/// arithmetic at `p` bits (plus guard bits).
pub fn kashaev_value(n: u32, p: usize) -> Result<Real> {
    if n < 2 {
        return Err(Error::Domain(format!("Kashaev value needs N >= 2, got {n}")));
    }
    if p < crate::laurent::MIN_PRECISION {
        return Err(Error::Precision(p));
    }
    let w = p + GUARD_BITS;
    let theta = mp::pi(w)
        .mul(&mp::real(2.0, w), w, mp::RM)
        .div(&mp::int(n as i64, w), w, mp::RM);
    // cos(2πj/N) as the real part of successive powers of e^{2πi/N}; the
    // rotation drifts by about j ulps, far inside the guard bits
    let step = Complex::new(mp::cos(&theta, w), mp::sin(&theta, w));
    let mut rot = Complex::one(w);
    let two = mp::real(2.0, w);
    let mut f = mp::real(1.0, w);
    let mut sum = mp::real(1.0, w);
    for _ in 1..n {
        rot = rot.mul(&step, w);
        f = f.mul(&two.sub(&rot.re.mul(&two, w, mp::RM), w, mp::RM), w, mp::RM);
        sum = sum.add(&f, w, mp::RM);
    }
    Ok(mp::round_to(&sum, p))
}
