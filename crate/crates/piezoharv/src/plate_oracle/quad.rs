//! Adaptive Gauss-Kronrod quadrature (G7-K15 pair).
//!
//! Each interval is evaluated with the 15-point Kronrod rule and the
//! embedded 7-point Gauss rule supplies its error estimate. Refinement is
//! deterministic worst-interval-first: while the summed error exceeds the
//! tolerance, the interval with the largest estimate (leftmost on ties)
//! splits at its midpoint. Endpoints are never sampled, so integrands with
//! removable endpoint singularities (after limit handling by the caller)
//! are safe.

use crate::error::{Error, Result};

/// Kronrod abscissae for the 15-point rule on [-1, 1] (positive half).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];

/// Gauss weights for the embedded 7-point rule.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_97,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

/// Kronrod weights for the 15-point rule.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_20,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// Hard cap on subdivisions; hitting it is a convergence failure.
const MAX_INTERVALS: usize = 2048;

/// Narrowest interval eligible for splitting, as a fraction of the span
/// (equivalent to a maximum bisection depth of 46).
const MIN_WIDTH_FACTOR: f64 = 1.42e-14;

/// One G7-K15 evaluation on [a, b]: returns (kronrod result, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut res_gauss = fc * WG[3];
    let mut res_kronrod = fc * WGK[7];
    let mut res_abs = res_kronrod.abs();

    let mut fv = [0.0f64; 14];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        let fsum = f1 + f2;
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * fsum;
        }
    }

    // QUADPACK-style rescaled error estimate.
    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    res_asc *= half.abs();
    res_abs *= half.abs();

    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    (res_kronrod * half, err)
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// Integrate `f` over [a, b] to absolute tolerance `tol`.
///
/// On failure to converge within the subdivision cap the best estimate is
/// attached to the error.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be > 0 (got {tol})")));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput("integration bounds must be finite".into()));
    }
    if a == b {
        return Ok(0.0);
    }

    let min_width = (b - a).abs() * MIN_WIDTH_FACTOR;
    let (value, err) = gk15(&f, a, b);
    if !value.is_finite() || !err.is_finite() {
        return Err(Error::Numeric(format!(
            "integrand evaluated to a non-finite value on [{a}, {b}]"
        )));
    }
    let mut intervals = vec![Interval { a, b, value, err }];

    loop {
        let total_err: f64 = intervals.iter().map(|iv| iv.err).sum();
        if total_err <= tol {
            break;
        }
        // Worst splittable interval, leftmost on ties.
        let worst = intervals
            .iter()
            .enumerate()
            .filter(|(_, iv)| (iv.b - iv.a).abs() > min_width)
            .max_by(|(_, x), (_, y)| {
                x.err.total_cmp(&y.err).then(y.a.total_cmp(&x.a))
            })
            .map(|(i, _)| i);
        let worst = match worst {
            Some(i) if intervals.len() < MAX_INTERVALS => i,
            // Depth or subdivision budget exhausted: attach the best estimate.
            _ => {
                let estimate = sum_by_position(&mut intervals);
                return Err(Error::QuadratureConvergence {
                    estimate,
                    achieved: total_err,
                    tol,
                });
            }
        };
        let Interval { a, b, .. } = intervals[worst];
        let mid = 0.5 * (a + b);
        let (lv, le) = gk15(&f, a, mid);
        let (rv, re) = gk15(&f, mid, b);
        if !(lv.is_finite() && le.is_finite() && rv.is_finite() && re.is_finite()) {
            return Err(Error::Numeric(format!(
                "integrand evaluated to a non-finite value on [{a}, {b}]"
            )));
        }
        intervals[worst] = Interval {
            a,
            b: mid,
            value: lv,
            err: le,
        };
        intervals.push(Interval {
            a: mid,
            b,
            value: rv,
            err: re,
        });
    }

    Ok(sum_by_position(&mut intervals))
}

/// Sum interval contributions in positional order, independent of the
/// refinement history.
fn sum_by_position(intervals: &mut [Interval]) -> f64 {
    intervals.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap());
    intervals.iter().map(|iv| iv.value).sum()
}
