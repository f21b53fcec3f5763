//! Bessel and Laguerre evaluations used by the coupling models.
//!
//! Arguments stay small here (z = 2η√(n+1) with η ≤ 0.2 and n up to a few
//! thousand), so the ascending series for J_ν converges without cancellation
//! trouble. An asymptotic branch covers the rest of the axis.

use std::f64::consts::PI;

/// Bessel function of the first kind, integer order `nu` in 0..=4.
pub fn bessel_j(nu: u32, z: f64) -> f64 {
    debug_assert!(nu <= 4);
    let sign = if z < 0.0 && nu % 2 == 1 { -1.0 } else { 1.0 };
    let z = z.abs();
    if z < 14.0 {
        sign * bessel_j_series(nu, z)
    } else {
        sign * bessel_j_asymptotic(nu, z)
    }
}

fn bessel_j_series(nu: u32, z: f64) -> f64 {
    let half = z / 2.0;
    // leading term (z/2)^nu / nu!
    let mut term = 1.0;
    for k in 1..=nu {
        term *= half / k as f64;
    }
    let mut sum = term;
    let h2 = half * half;
    for k in 1..200 {
        term *= -h2 / (k as f64 * (k as f64 + nu as f64));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

fn bessel_j_asymptotic(nu: u32, z: f64) -> f64 {
    // Hankel expansion, enough terms for |z| >= 14
    let mu = 4.0 * (nu as f64) * (nu as f64);
    let w8 = 8.0 * z;
    let f = |k: f64| mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    let p = 1.0 - f(1.0) * f(2.0) / (2.0 * w8.powi(2))
        + f(1.0) * f(2.0) * f(3.0) * f(4.0) / (24.0 * w8.powi(4))
        - f(1.0) * f(2.0) * f(3.0) * f(4.0) * f(5.0) * f(6.0) / (720.0 * w8.powi(6));
    let q = f(1.0) / w8
        * (1.0 - f(2.0) * f(3.0) / (6.0 * w8.powi(2))
            + f(2.0) * f(3.0) * f(4.0) * f(5.0) / (120.0 * w8.powi(4)));
    let chi = z - (0.5 * nu as f64 + 0.25) * PI;
    (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Generalized Laguerre polynomial L_n^{(1)}(x) by the three-term upward
/// recurrence. Stable for the small arguments encountered here.
pub fn laguerre_l1(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut lm1 = 1.0; // L_0^{(1)}
    let mut l = 2.0 - x; // L_1^{(1)}
    for k in 1..n {
        let kf = k as f64;
        let lp1 = ((2.0 * kf + 2.0 - x) * l - (kf + 1.0) * lm1) / (kf + 1.0);
        lm1 = l;
        l = lp1;
    }
    l
}

/// Root x0 of d²J₁(√x)/dx² in (7, 13), the point where the slope of J₁(√x)
/// stops steepening. Equivalent condition in z = √x: 2 J₀(z) + (z - 3/z) J₁(z) = 0.
pub fn bessel_inflection_x0() -> f64 {
    let f = |z: f64| 2.0 * bessel_j(0, z) + (z - 3.0 / z) * bessel_j(1, z);
    let mut lo = 7.0_f64.sqrt();
    let mut hi = 13.0_f64.sqrt();
    let (flo, fhi) = (f(lo), f(hi));
    assert!(
        flo * fhi < 0.0,
        "x0 bracket lost: f({lo}) = {flo}, f({hi}) = {fhi}"
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || hi - lo < 1e-15 {
            return mid * mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let z0 = 0.5 * (lo + hi);
    z0 * z0
}
