//! Closed-form oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Lanczos approximation (g = 7, 9 terms), accurate to ~1e-15 relative.
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

pub fn beta(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// `‖(z+i)^{-s}‖_{A^p_α}` from `∫(x²+Y²)^{-ps/2}dx = Y^{1-ps}√π Γ((ps-1)/2)/Γ(ps/2)`
/// and `∫_0^∞ (1+y)^{1-ps} y^{α-1} dy = B(α, ps-1-α)`.
pub fn bergman_power_shift_norm(s: f64, p: f64, alpha: f64) -> f64 {
    let ps = p * s;
    let lp = (beta(alpha, ps - 1.0 - alpha) * PI.sqrt() * gamma((ps - 1.0) / 2.0) / gamma(ps / 2.0)).ln();
    (lp / p).exp()
}

/// `‖(z+i)^{-s}‖_{H^p_{|x|^α}}`: the boundary line gives the supremum,
/// `∫ (x²+1)^{-ps/2}|x|^α dx = B((1+α)/2, (ps-1-α)/2)`.
pub fn hardy_power_shift_norm(s: f64, p: f64, alpha: f64) -> f64 {
    beta((1.0 + alpha) / 2.0, (p * s - 1.0 - alpha) / 2.0).powf(1.0 / p)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
