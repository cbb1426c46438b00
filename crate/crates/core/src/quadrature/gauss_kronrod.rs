//! 21-point Gauss-Kronrod rule with QUADPACK's error heuristic.

use super::QuadValue;

/// Kronrod abscissae on [-1, 1], outermost first; index 10 is the centre.
/// Odd indices are the 10-point Gauss abscissae.
pub(crate) const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

pub(crate) const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208931961208,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

pub(crate) struct PanelEstimate<V> {
    pub value: V,
    pub error: f64,
    /// Integral of |g| over the panel, used for the round-off floor.
    pub abs_value: f64,
}

/// Applies the rule to `g` on `[lo, hi]`.
pub(crate) fn gk21<V: QuadValue>(g: &dyn Fn(f64) -> V, lo: f64, hi: f64) -> PanelEstimate<V> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = g(centre);

    let mut resg = V::zero();
    let mut resk = fc * WGK[10];
    let mut resabs = WGK[10] * fc.magnitude();
    let mut fv1 = [V::zero(); 10];
    let mut fv2 = [V::zero(); 10];

    for j in 0..10 {
        let absc = half * XGK[j];
        let f1 = g(centre - absc);
        let f2 = g(centre + absc);
        fv1[j] = f1;
        fv2[j] = f2;
        let pair = f1 + f2;
        resk = resk + pair * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            resg = resg + pair * WG[j / 2];
        }
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).magnitude() + (fv2[j] - reskh).magnitude());
    }

    let scale = half.abs();
    let value = resk * half;
    resabs *= scale;
    resasc *= scale;
    let mut error = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    PanelEstimate {
        value,
        error,
        abs_value: resabs,
    }
}
