//! Gamma function and normalized Bessel functions `j_alpha`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
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

pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Crossover between the power series and the Hankel expansion.
pub const SERIES_LIMIT: f64 = 12.0;

fn check_order(alpha: f64) -> Result<()> {
    if !(alpha >= -0.5) {
        return Err(Error::Domain(format!("Bessel order {alpha} is below -1/2")));
    }
    Ok(())
}

/// `a_k(alpha) = prod_{j=1..k} (4 alpha^2 - (2j-1)^2) / (k! 8^k)`, the Hankel
/// expansion coefficients: `P + iQ = sum_k i^k a_k z^-k`.
pub fn hankel_coefficients(alpha: f64, n: usize) -> Vec<f64> {
    let mu = 4.0 * alpha * alpha;
    let mut out = Vec::with_capacity(n);
    let mut a = 1.0;
    out.push(a);
    for k in 1..n {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (8.0 * k as f64);
        out.push(a);
    }
    out
}

/// `A = 2^(alpha + 1/2) Gamma(alpha + 1) / sqrt(pi)`, the amplitude in
/// `j_alpha(t) ~ A t^-(alpha + 1/2) cos(t - beta)`.
pub fn asymptotic_amplitude(alpha: f64) -> f64 {
    2f64.powf(alpha + 0.5) * gamma(alpha + 1.0) / PI.sqrt()
}

/// `beta = alpha pi / 2 + pi / 4`.
pub fn asymptotic_phase(alpha: f64) -> f64 {
    alpha * PI / 2.0 + PI / 4.0
}

fn series(alpha: f64, t: f64) -> f64 {
    let x = -0.25 * t * t;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..300 {
        let kf = k as f64;
        term *= x / (kf * (alpha + kf));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) && kf * kf > -x {
            break;
        }
    }
    sum
}

fn asymptotic(alpha: f64, t: f64) -> f64 {
    let mu = 4.0 * alpha * alpha;
    // P and Q summed up to the smallest term
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (8.0 * k as f64 * t);
        if a == 0.0 {
            break;
        }
        if a.abs() >= last {
            break;
        }
        last = a.abs();
        // i^k
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let chi = t - asymptotic_phase(alpha);
    asymptotic_amplitude(alpha) * t.powf(-(alpha + 0.5)) * (p * chi.cos() - q * chi.sin())
}

/// `j_alpha(t) = Gamma(alpha + 1) (2/t)^alpha J_alpha(t)`, with `j_alpha(0) = 1`.
pub fn bessel_j(alpha: f64, t: f64) -> Result<f64> {
    check_order(alpha)?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "argument {t} must be finite and nonnegative"
        )));
    }
    Ok(bessel_j_unchecked(alpha, t))
}

pub(crate) fn bessel_j_unchecked(alpha: f64, t: f64) -> f64 {
    let t = t.abs();
    if t == 0.0 {
        1.0
    } else if alpha == -0.5 {
        t.cos()
    } else if alpha == 0.5 {
        t.sin() / t
    } else if t <= SERIES_LIMIT {
        series(alpha, t)
    } else {
        asymptotic(alpha, t)
    }
}

/// `j_alpha'(t) = -t / (2 (alpha + 1)) j_{alpha+1}(t)`.
pub(crate) fn bessel_j_derivative(alpha: f64, t: f64) -> f64 {
    -t / (2.0 * (alpha + 1.0)) * bessel_j_unchecked(alpha + 1.0, t)
}

/// First positive zero `q_alpha` of `j_alpha`, bracketed by a scan and refined by bisection.
pub fn bessel_first_zero(alpha: f64) -> Result<f64> {
    check_order(alpha)?;
    if alpha == -0.5 {
        return Ok(PI / 2.0);
    }
    if alpha == 0.5 {
        return Ok(PI);
    }
    let step = 0.05;
    let mut lo = 0.0;
    let mut hi = step;
    while bessel_j_unchecked(alpha, hi) > 0.0 {
        lo = hi;
        hi += step;
        if hi > 1e4 {
            return Err(Error::Domain(format!("no zero of j_{alpha} found")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if bessel_j_unchecked(alpha, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_known_values() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-14);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(2.5) - 0.75 * PI.sqrt()).abs() < 1e-14);
        for k in 1..15 {
            let x = 0.37 + k as f64 * 0.41;
            let rel = (gamma(x + 1.0) - x * gamma(x)).abs() / gamma(x + 1.0);
            assert!(rel < 1e-13, "x={x} rel={rel}");
        }
    }

    #[test]
    fn half_integer_closed_forms() {
        for &t in &[0.3, 2.0, PI, 11.9, 12.5, 40.0] {
            assert!((bessel_j(0.5, t).unwrap() - t.sin() / t).abs() < 1e-14);
            assert!((bessel_j(-0.5, t).unwrap() - t.cos()).abs() < 1e-14);
            // j_{3/2}(t) = 3 (sin t - t cos t) / t^3, through the general branches
            let want = 3.0 * (t.sin() - t * t.cos()) / t.powi(3);
            assert!((bessel_j(1.5, t).unwrap() - want).abs() < 1e-12, "t={t}");
        }
        assert!(bessel_j(0.5, PI).unwrap().abs() < 1e-15);
        assert_eq!(bessel_j(-0.5, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3.7, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn branches_agree_near_crossover() {
        for &alpha in &[0.0, 0.25, 1.0, 2.0, 2.5] {
            let s = series(alpha, 12.0);
            let a = asymptotic(alpha, 12.0);
            assert!((s - a).abs() < 1e-10, "alpha={alpha}: {s} vs {a}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_j(-0.6, 1.0), Err(Error::Domain(_))));
        assert!(bessel_first_zero(-1.0).is_err());
        assert!(bessel_j(0.0, -1.0).is_err());
    }

    #[test]
    fn first_zeros() {
        assert_eq!(bessel_first_zero(0.5).unwrap(), PI);
        assert_eq!(bessel_first_zero(-0.5).unwrap(), PI / 2.0);
        assert!((bessel_first_zero(0.0).unwrap() - 2.404_825_557_695_773).abs() < 1e-10);
        // j_1 first zero 3.8317059702075125
        assert!((bessel_first_zero(1.0).unwrap() - 3.831_705_970_207_512).abs() < 1e-10);
        // increasing in alpha
        assert!(bessel_first_zero(1.5).unwrap() > bessel_first_zero(1.0).unwrap());
    }
}
