use crate::laurent::ComplexParam;
use crate::mp::{self, Complex, Real};

/// Where `a` sits relative to `{|2cosh a − 2| < 1, |Im a| < π/3}`.
#[derive(Clone, Debug)]
pub struct RegionVerdict {
    pub a: ComplexParam,
    /// `|2cosh a − 2|`
    pub delta: Real,
    pub im_bound_ok: bool,
    pub inside: bool,
    /// `cosh x − cos y` for `a = x + iy`, which equals `|cosh a − 1|`.
    pub equivalent_form: Real,
    /// Distance to whichever boundary is nearer: `min(1 − δ, π/3 − |Im a|)`.
    /// Negative outside.
    pub margin: f64,
    pub landmarks: Vec<Landmark>,
}

#[derive(Clone, Debug)]
pub struct Landmark {
    pub label: &'static str,
    pub a: ComplexParam,
}

/// The four points where the boundary curve meets the axes.
pub fn landmarks(p: usize) -> Vec<Landmark> {
    let real = ComplexParam::boundary_real(p).expect("precision checked by caller");
    let imag = ComplexParam::boundary_imag(p).expect("precision checked by caller");
    let neg = |c: &ComplexParam| ComplexParam::new(c.value().neg(), p).expect("same precision");
    vec![
        Landmark {
            label: "+log((3+sqrt5)/2)",
            a: real.clone(),
        },
        Landmark {
            label: "-log((3+sqrt5)/2)",
            a: neg(&real),
        },
        Landmark {
            label: "+i*pi/3",
            a: imag.clone(),
        },
        Landmark {
            label: "-i*pi/3",
            a: neg(&imag),
        },
    ]
}

/// Classifies `a`. Both strict inequalities are tested with a `2^{8−p}` band,
/// so points that agree with the boundary to working accuracy (the four
/// landmarks included) count as outside.
pub fn region_check(a: &ComplexParam) -> RegionVerdict {
    let p = a.precision();
    let w = a.working_precision();
    let band = mp::real(2f64.powi(8 - p as i32), w);
    let one = mp::real(1.0, w);
    let delta = a.delta();
    let third_pi = mp::pi(w).div(&mp::real(3.0, w), w, mp::RM);
    let im_abs = a.im().abs();
    let im_room = third_pi.sub(&im_abs, w, mp::RM);
    let im_bound_ok = mp::cmp(&im_room, &band).is_gt();
    let delta_room = one.sub(&delta, w, mp::RM);
    let inside = im_bound_ok && mp::cmp(&delta_room, &band).is_gt();
    let equivalent_form = mp::round_to(&mp::cosh(a.re(), w).sub(&mp::cos(a.im(), w), w, mp::RM), p);
    RegionVerdict {
        a: a.clone(),
        delta,
        im_bound_ok,
        inside,
        equivalent_form,
        margin: mp::to_f64(&delta_room).min(mp::to_f64(&im_room)),
        landmarks: landmarks(p),
    }
}

impl RegionVerdict {
    /// `|cosh a − 1|` recomputed directly, for comparison with `equivalent_form`.
    pub fn direct_form(&self) -> Real {
        let w = self.a.working_precision();
        let v = self.a.value().cosh(w).sub(&Complex::one(w), w).abs(w);
        mp::round_to(&v, self.a.precision())
    }
}
