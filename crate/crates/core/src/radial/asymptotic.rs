//! Truncated asymptotic expansions `sum_j e^{i w_j u} sum_k c_jk u^-(p_j + k)`.
//!
//! Used to integrate slowly decaying oscillatory tails in closed form instead
//! of truncating them.

use num_complex::Complex64;

use super::quadrature::semi_infinite_complex;
use super::special::{asymptotic_amplitude, asymptotic_phase, hankel_coefficients};
use crate::error::{Error, Result};

/// Number of inverse powers kept in every term.
pub const SERIES_TERMS: usize = 32;

const OMEGA_EPS: f64 = 1e-12;
// `|omega| T` above which integration by parts is used for tails.
const IBP_THRESHOLD: f64 = 40.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{i omega u} sum_k coeffs[k] u^-(power + k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expo {
    pub omega: f64,
    pub power: f64,
    pub coeffs: Vec<Complex64>,
}

impl Expo {
    pub fn constant(v: f64) -> Self {
        Expo {
            omega: 0.0,
            power: 0.0,
            coeffs: vec![c(v, 0.0)],
        }
    }

    pub fn eval(&self, u: f64) -> Complex64 {
        let x = 1.0 / u;
        let mut acc = c(0.0, 0.0);
        for coef in self.coeffs.iter().rev() {
            acc = acc * x + coef;
        }
        acc * u.powf(-self.power) * Complex64::from_polar(1.0, self.omega * u)
    }

    fn mul(&self, other: &Expo) -> Expo {
        let n = (self.coeffs.len() + other.coeffs.len() - 1).min(SERIES_TERMS);
        let mut coeffs = vec![c(0.0, 0.0); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < n {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Expo {
            omega: self.omega + other.omega,
            power: self.power + other.power,
            coeffs,
        }
    }

    /// `int_T^inf` of this term.
    pub fn tail_integral(&self, t: f64) -> Result<Complex64> {
        if self.omega.abs() < OMEGA_EPS {
            let mut s = c(0.0, 0.0);
            for (k, coef) in self.coeffs.iter().enumerate() {
                if *coef == c(0.0, 0.0) {
                    continue;
                }
                let p = self.power + k as f64;
                if p <= 1.0 + 1e-12 {
                    return Err(Error::Quadrature(format!("non-integrable tail u^-{p}")));
                }
                s += coef * t.powf(1.0 - p) / (p - 1.0);
            }
            return Ok(s);
        }
        if self.omega.abs() * t >= IBP_THRESHOLD {
            let mut s = c(0.0, 0.0);
            for (k, coef) in self.coeffs.iter().enumerate() {
                if *coef == c(0.0, 0.0) {
                    continue;
                }
                s += coef * ibp_tail(self.power + k as f64, self.omega, t);
            }
            return Ok(s);
        }
        // rotate onto u = T + i sigma v where the integrand decays like e^{-|omega| v}
        let sigma = self.omega.signum();
        let w = self.omega.abs();
        let f = |v: f64| {
            let z = c(t, sigma * v);
            let x = z.inv();
            let mut acc = c(0.0, 0.0);
            for coef in self.coeffs.iter().rev() {
                acc = acc * x + coef;
            }
            acc * z.powf(-self.power) * (-w * v).exp()
        };
        let scale = (1.0 / w).min(t);
        let integral = semi_infinite_complex(&f, scale, 1e-16)
            .ok_or_else(|| Error::Quadrature("contour tail did not converge".into()))?;
        Ok(c(0.0, sigma) * Complex64::from_polar(1.0, self.omega * t) * integral)
    }
}

// int_T^inf u^-p e^{i w u} du = e^{iwT} T^-p sum_k -(p)_k / ((iw)^{k+1} T^k), summed to its smallest term.
fn ibp_tail(p: f64, omega: f64, t: f64) -> Complex64 {
    let iw = c(0.0, omega);
    let mut term = -iw.inv();
    let mut sum = term;
    let mut last = term.norm();
    for k in 0..400 {
        let next = term * (p + k as f64) / (iw * t);
        let n = next.norm();
        if n >= last {
            break;
        }
        sum += next;
        term = next;
        last = n;
        if n < 1e-18 * sum.norm() {
            break;
        }
    }
    sum * t.powf(-p) * Complex64::from_polar(1.0, omega * t)
}

/// A finite sum of [`Expo`] terms; real-valued functions use the real part.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExpoSum {
    pub terms: Vec<Expo>,
}

impl ExpoSum {
    pub fn constant(v: f64) -> Self {
        ExpoSum {
            terms: vec![Expo::constant(v)],
        }
    }

    /// Large-argument expansion of `j_alpha(lambda u)` in `u`.
    pub fn bessel(alpha: f64, lambda: f64) -> Self {
        if lambda == 0.0 {
            return Self::constant(1.0);
        }
        let a = hankel_coefficients(alpha, SERIES_TERMS);
        let amp = 0.5 * asymptotic_amplitude(alpha);
        let beta = asymptotic_phase(alpha);
        let p = alpha + 0.5;
        let mut out = ExpoSum::default();
        for sign in [1.0, -1.0] {
            let mut coeffs = Vec::with_capacity(SERIES_TERMS);
            let mut ik = c(1.0, 0.0);
            let unit = c(0.0, sign);
            let front = Complex64::from_polar(amp, -sign * beta) * lambda.powf(-p);
            for (k, ak) in a.iter().enumerate() {
                coeffs.push(front * ik * *ak * lambda.powi(-(k as i32)));
                ik *= unit;
            }
            out.push(Expo {
                omega: sign * lambda,
                power: p,
                coeffs,
            });
        }
        out
    }

    /// `1 / (1 - u^2 / q^2) = -sum_m q^{2m+2} u^-(2m+2)` for `u > q`.
    pub fn radial_pole(q: f64) -> Self {
        let mut coeffs = vec![c(0.0, 0.0); SERIES_TERMS];
        let mut qq = q * q;
        for k in (0..SERIES_TERMS).step_by(2) {
            coeffs[k] = c(-qq, 0.0);
            qq *= q * q;
        }
        ExpoSum {
            terms: vec![Expo {
                omega: 0.0,
                power: 2.0,
                coeffs,
            }],
        }
    }

    pub fn push(&mut self, e: Expo) {
        for t in &mut self.terms {
            if (t.omega - e.omega).abs() >= OMEGA_EPS {
                continue;
            }
            let shift = e.power - t.power;
            let k = shift.round();
            if (shift - k).abs() > 1e-12 {
                continue;
            }
            if k < 0.0 {
                // move the existing term down to the new leading power
                let mut coeffs = vec![c(0.0, 0.0); (-k) as usize];
                coeffs.extend_from_slice(&t.coeffs);
                t.coeffs = coeffs;
                t.power = e.power;
            }
            let off = (e.power - t.power).round() as usize;
            for (i, coef) in e.coeffs.iter().enumerate() {
                let idx = off + i;
                if idx >= SERIES_TERMS {
                    break;
                }
                if idx >= t.coeffs.len() {
                    t.coeffs.resize(idx + 1, c(0.0, 0.0));
                }
                t.coeffs[idx] += coef;
            }
            t.coeffs.truncate(SERIES_TERMS);
            return;
        }
        self.terms.push(e);
    }

    pub fn mul(&self, other: &ExpoSum) -> ExpoSum {
        let mut out = ExpoSum::default();
        for a in &self.terms {
            for b in &other.terms {
                out.push(a.mul(b));
            }
        }
        out
    }

    /// Multiply by `u^k`.
    pub fn times_power(&self, k: f64) -> ExpoSum {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.power -= k;
        }
        out
    }

    pub fn scaled(&self, s: f64) -> ExpoSum {
        let mut out = self.clone();
        for t in &mut out.terms {
            for coef in &mut t.coeffs {
                *coef *= s;
            }
        }
        out
    }

    pub fn eval_complex(&self, u: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(u)).sum()
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.eval_complex(u).re
    }

    /// `int_T^inf` of the real part.
    pub fn tail_integral(&self, t: f64) -> Result<f64> {
        let mut s = c(0.0, 0.0);
        for term in &self.terms {
            s += term.tail_integral(t)?;
        }
        Ok(s.re)
    }

    /// Expansion of `F(u) = int_u^inf f`; valid where `|omega| u` is large for the oscillating terms.
    pub fn integral_from_infinity(&self) -> Result<ExpoSum> {
        let mut out = ExpoSum::default();
        for term in &self.terms {
            let n = term.coeffs.len();
            if term.omega.abs() < OMEGA_EPS {
                let mut coeffs = Vec::with_capacity(n);
                for (k, coef) in term.coeffs.iter().enumerate() {
                    let p = term.power + k as f64;
                    if *coef != c(0.0, 0.0) && p <= 1.0 + 1e-12 {
                        return Err(Error::Quadrature(format!("non-integrable tail u^-{p}")));
                    }
                    coeffs.push(if *coef == c(0.0, 0.0) {
                        *coef
                    } else {
                        coef / (p - 1.0)
                    });
                }
                out.push(Expo {
                    omega: 0.0,
                    power: term.power - 1.0,
                    coeffs,
                });
            } else {
                let iw_inv = c(0.0, term.omega).inv();
                let mut coeffs = vec![c(0.0, 0.0); SERIES_TERMS];
                for (m, coef) in term.coeffs.iter().enumerate() {
                    let p = term.power + m as f64;
                    let mut factor = -iw_inv;
                    for j in 0..SERIES_TERMS - m {
                        coeffs[m + j] += coef * factor;
                        factor *= (p + j as f64) * iw_inv;
                    }
                }
                out.push(Expo {
                    omega: term.omega,
                    power: term.power,
                    coeffs,
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::special::bessel_j;
    use super::*;

    #[test]
    fn bessel_expansion_matches_function() {
        for &alpha in &[-0.5, 0.0, 0.5, 1.0, 1.5, 2.0] {
            for &lambda in &[0.7, 1.0, 2.5] {
                let e = ExpoSum::bessel(alpha, lambda);
                for &u in &[60.0, 75.3, 200.0] {
                    let want = bessel_j(alpha, lambda * u).unwrap();
                    let got = e.eval(u);
                    assert!(
                        (want - got).abs() < 1e-13,
                        "alpha={alpha} lambda={lambda} u={u}"
                    );
                }
            }
        }
    }

    #[test]
    fn tail_integrals_against_closed_forms() {
        // int_T^inf sin(u)/u^2 du via the j_{1/2} expansion times 1/u
        let t = 50.0;
        let e = ExpoSum::bessel(0.5, 1.0).times_power(-1.0);
        let got = e.tail_integral(t).unwrap();
        // numeric reference with many panels up to a far cutoff plus IBP
        let rule = super::super::quadrature::GaussLegendre::order16();
        let far = 5000.0;
        let mut f = |u: f64| u.sin() / (u * u);
        let num = super::super::quadrature::panel_integral(rule, &mut f, t, far, 0.5);
        // remainder beyond `far`: cos(far)/far^2 to leading order
        let rest = far.cos() / (far * far) + 2.0 * far.sin() / far.powi(3);
        assert!(
            (got - (num + rest)).abs() < 1e-12,
            "{got} vs {}",
            num + rest
        );

        // small omega goes through the contour
        let slow = Expo {
            omega: 0.3,
            power: 2.0,
            coeffs: vec![c(1.0, 0.0)],
        };
        let got = slow.tail_integral(10.0).unwrap();
        let mut g = |u: f64| (0.3 * u).cos() / (u * u);
        let far = 20000.0;
        let num = super::super::quadrature::panel_integral(rule, &mut g, 10.0, far, 1.0);
        let rest = -(0.3 * far).sin() / (0.3 * far * far);
        assert!(
            (got.re - (num + rest)).abs() < 1e-11,
            "{} vs {}",
            got.re,
            num + rest
        );
    }

    #[test]
    fn antiderivative_differentiates_back() {
        let y = ExpoSum::bessel(1.0, 1.0)
            .mul(&ExpoSum::bessel(1.0, 1.0))
            .times_power(1.0);
        let big = y.integral_from_infinity().unwrap();
        let u = 70.0;
        let h = 1e-3;
        let deriv = (big.eval(u + h) - big.eval(u - h)) / (2.0 * h);
        assert!((deriv + y.eval(u)).abs() < 1e-9);
    }
}
