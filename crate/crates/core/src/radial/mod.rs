//! Radial machinery on R^d: normalized Bessel functions, the Yudin function,
//! Hankel transforms, ball and sphere transforms and Gorbachev's `H`.

pub mod asymptotic;
pub mod quadrature;
pub mod special;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use asymptotic::{Expo, ExpoSum};
pub use special::{bessel_first_zero, bessel_j, gamma};

use crate::error::{Error, Result};
use quadrature::{panel_integral, GaussLegendre};
use special::{asymptotic_amplitude, bessel_j_derivative, bessel_j_unchecked};

/// Sign property tolerance for the Yudin function.
pub const SIGN_TOL: f64 = 1e-9;
// below this distance (relative to q) the Yudin quotient uses the Taylor form
const SINGULAR_WINDOW: f64 = 1e-4;
// `s * T` needed before the Bessel factor is replaced by its expansion
const EXPANSION_ARGUMENT: f64 = 40.0;
const MAX_TAIL_START: f64 = 4000.0;

fn default_order() -> usize {
    16
}
fn default_t_max() -> f64 {
    60.0
}
fn default_width() -> f64 {
    0.5
}
fn default_tol() -> f64 {
    1e-9
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_width")]
    pub panel_width: f64,
    /// Allowed difference between the panel rule and its halved refinement.
    #[serde(default = "default_tol")]
    pub tol: f64,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            order: 16,
            t_max: 60.0,
            panel_width: 0.5,
            tol: 1e-9,
        }
    }
}

impl Quadrature {
    pub fn validate(&self) -> Result<()> {
        if self.order < 2 || self.order > 64 {
            return Err(Error::InvalidInput(format!(
                "quadrature order {} outside 2..=64",
                self.order
            )));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidInput("T_max must be positive".into()));
        }
        if !(self.panel_width > 0.0 && self.panel_width.is_finite()) {
            return Err(Error::InvalidInput("panel width must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        Ok(())
    }

    fn rule(&self) -> GaussLegendre {
        if self.order == 16 {
            GaussLegendre::order16().clone()
        } else {
            GaussLegendre::new(self.order)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSpec {
    pub d: usize,
    pub grid: Vec<f64>,
    #[serde(default)]
    pub quadrature: Quadrature,
}

impl RadialSpec {
    pub fn new(d: usize, grid: Vec<f64>, quadrature: Quadrature) -> Result<Self> {
        let spec = RadialSpec {
            d,
            grid,
            quadrature,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `start, start + step, ...` up to `stop` inclusive (within rounding).
    pub fn uniform(d: usize, start: f64, stop: f64, step: f64) -> Result<Self> {
        Self::new(d, uniform_grid(start, stop, step)?, Quadrature::default())
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if self.grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
            return Err(Error::InvalidInput(
                "grid points must be finite and nonnegative".into(),
            ));
        }
        if self.grid.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidInput("grid must be sorted".into()));
        }
        self.quadrature.validate()
    }
}

pub fn uniform_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidInput(format!(
            "bad grid {start}..{stop} step {step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    Ok(())
}

/// `Y_d(t) = j_nu(t)^2 / (1 - t^2 / q^2)` with `nu = d/2 - 1` and `q = q_nu`.
#[derive(Debug, Clone)]
pub struct Yudin {
    pub d: usize,
    pub nu: f64,
    pub q: f64,
    slope: f64,
}

impl Yudin {
    pub fn new(d: usize) -> Result<Self> {
        check_dim(d)?;
        let nu = d as f64 / 2.0 - 1.0;
        let q = bessel_first_zero(nu)?;
        let slope = if nu == -0.5 {
            -1.0
        } else {
            bessel_j_derivative(nu, q)
        };
        Ok(Yudin { d, nu, q, slope })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let q = self.q;
        if (t - q).abs() < SINGULAR_WINDOW * q {
            // j(t) ~ j'(q) e (1 - (2 nu + 1) e / (2q)) with e = t - q, using
            // j'' = -(2 nu + 1) j' / t at a zero; one factor of e cancels
            let e = t - q;
            let c = 1.0 - (2.0 * self.nu + 1.0) * e / (2.0 * q);
            return -q * q * self.slope * self.slope * c * c * e / (t + q);
        }
        let j = bessel_j_unchecked(self.nu, t);
        j * j / (1.0 - t * t / (q * q))
    }

    /// Large-`t` expansion of `Y_d`.
    pub fn tail_model(&self) -> ExpoSum {
        let j = ExpoSum::bessel(self.nu, 1.0);
        j.mul(&j).mul(&ExpoSum::radial_pole(self.q))
    }
}

pub fn yudin_y(d: usize, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t = {t} must be nonnegative")));
    }
    Ok(Yudin::new(d)?.eval(t))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignReport {
    pub d: usize,
    pub q: f64,
    pub max_violation: f64,
    pub worst_t: Option<f64>,
    pub points: usize,
    pub pass: bool,
}

/// Checks `Y_d >= 0` on `[0, q]` and `Y_d <= 0` on `[q, inf)` over the grid.
pub fn yudin_sign_check(d: usize, grid: &[f64]) -> Result<SignReport> {
    let y = Yudin::new(d)?;
    let mut worst = 0.0;
    let mut worst_t = None;
    for &t in grid {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("t = {t} must be nonnegative")));
        }
        let v = y.eval(t);
        let violation = if t <= y.q { -v } else { v };
        if violation > worst {
            worst = violation;
            worst_t = Some(t);
        }
    }
    Ok(SignReport {
        d,
        q: y.q,
        max_violation: worst,
        worst_t,
        points: grid.len(),
        pass: worst <= SIGN_TOL,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HankelValue {
    pub value: f64,
    /// Rough size of what lies beyond the numerically integrated range.
    pub truncation_estimate: f64,
    /// Difference between the panel rule and the halved-panel rule.
    pub refinement_delta: f64,
    /// Closed-form tail contribution that was added, if any.
    pub tail_correction: f64,
}

fn hankel_norm(alpha: f64) -> f64 {
    1.0 / (2f64.powf(alpha) * gamma(alpha + 1.0))
}

fn refined(quad: &Quadrature, g: &mut dyn FnMut(f64) -> f64, end: f64) -> Result<(f64, f64)> {
    let rule = quad.rule();
    let coarse = panel_integral(&rule, g, 0.0, end, quad.panel_width);
    let fine = panel_integral(&rule, g, 0.0, end, 0.5 * quad.panel_width);
    let delta = (fine - coarse).abs();
    if !fine.is_finite() || delta > quad.tol * fine.abs().max(1.0) {
        return Err(Error::Quadrature(format!(
            "panel refinement changed the integral by {delta:.3e} (tol {:.1e})",
            quad.tol
        )));
    }
    Ok((fine, delta))
}

fn check_hankel_args(alpha: f64, s: f64, quad: &Quadrature) -> Result<()> {
    quad.validate()?;
    if !(alpha >= -0.5) {
        return Err(Error::Domain(format!("Hankel order {alpha} is below -1/2")));
    }
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!(
            "s = {s} must be finite and nonnegative"
        )));
    }
    Ok(())
}

/// `(H_alpha F)(s) = 1/(2^alpha Gamma(alpha+1)) int_0^T F(u) j_alpha(su) u^(2alpha+1) du`, truncated at `T_max`.
///
/// Panels have width `panel_width` starting at 0, so a jump of `F` at a
/// multiple of the width is integrated exactly.
pub fn hankel_transform(
    f: &dyn Fn(f64) -> f64,
    alpha: f64,
    s: f64,
    quad: &Quadrature,
) -> Result<HankelValue> {
    check_hankel_args(alpha, s, quad)?;
    let p = 2.0 * alpha + 1.0;
    let mut g = |u: f64| f(u) * bessel_j_unchecked(alpha, s * u) * u.powf(p);
    let t = quad.t_max;
    let (value, delta) = refined(quad, &mut g, t)?;
    // beyond T assume at worst u^-2 decay of the integrand envelope
    let w = quad.panel_width.min(t);
    let envelope = (0..=8)
        .map(|i| g(t - w * i as f64 / 8.0).abs())
        .fold(0.0, f64::max);
    let norm = hankel_norm(alpha);
    Ok(HankelValue {
        value: norm * value,
        truncation_estimate: norm * envelope * t,
        refinement_delta: norm * delta,
        tail_correction: 0.0,
    })
}

/// Hankel transform of a profile whose behaviour beyond `T_max` is given by `tail`.
///
/// The integral is split at `T_s = max(T_max, 40/s)`; past it the product of
/// `tail`, the Bessel expansion and `u^(2alpha+1)` is integrated in closed form.
pub fn hankel_transform_tailed(
    f: &dyn Fn(f64) -> f64,
    tail: &ExpoSum,
    alpha: f64,
    s: f64,
    quad: &Quadrature,
) -> Result<HankelValue> {
    check_hankel_args(alpha, s, quad)?;
    let p = 2.0 * alpha + 1.0;
    let end = if s > 0.0 {
        quad.t_max.max((EXPANSION_ARGUMENT / s).min(MAX_TAIL_START))
    } else {
        quad.t_max
    };
    let mut g = |u: f64| f(u) * bessel_j_unchecked(alpha, s * u) * u.powf(p);
    let (value, delta) = refined(quad, &mut g, end)?;
    let model = tail.mul(&ExpoSum::bessel(alpha, s)).times_power(p);
    let correction = model.tail_integral(end)?;
    let mismatch = (f(end) - tail.eval(end)).abs() * end.powf(p + 1.0);
    let norm = hankel_norm(alpha);
    Ok(HankelValue {
        value: norm * (value + correction),
        truncation_estimate: norm * mismatch,
        refinement_delta: norm * delta,
        tail_correction: norm * correction,
    })
}

/// Hankel transform `H_{d/2-1} Y_d (s)`, the radial profile of the Fourier transform of `y_d` up to `(2 pi)^(d/2)`.
pub fn yudin_hat(d: usize, s: f64, quad: &Quadrature) -> Result<HankelValue> {
    let y = Yudin::new(d)?;
    let tail = y.tail_model();
    hankel_transform_tailed(&|u| y.eval(u), &tail, y.nu, s, quad)
}

/// Fourier transform of the indicator of the unit ball, `pi^(d/2)/Gamma(d/2+1) j_{d/2}(|x|)`.
pub fn ball_char_transform(d: usize, x: f64) -> Result<f64> {
    check_dim(d)?;
    let h = d as f64 / 2.0;
    Ok(PI.powf(h) / gamma(h + 1.0) * bessel_j(h, x.abs())?)
}

/// Fourier transform of surface measure on the unit sphere, `2 pi^(d/2)/Gamma(d/2) j_{d/2-1}(|s|)`.
pub fn sphere_transform(d: usize, s: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "sphere transform needs d >= 2, got {d}"
        )));
    }
    let h = d as f64 / 2.0;
    Ok(2.0 * PI.powf(h) / gamma(h) * bessel_j(h - 1.0, s.abs())?)
}

/// `H(t) = int_t^inf s Y_{d+2}(s) ds`, tabulated on panel edges of `[0, T_max]`
/// and continued by its asymptotic expansion beyond.
#[derive(Debug, Clone)]
pub struct GorbachevH {
    pub d: usize,
    /// `q_{d/2}`, the zero of `Y_{d+2}`.
    pub q: f64,
    pub error_estimate: f64,
    yudin: Yudin,
    rule: GaussLegendre,
    edges: Vec<f64>,
    values: Vec<f64>,
    tail: ExpoSum,
}

impl GorbachevH {
    pub fn new(d: usize, quad: &Quadrature) -> Result<Self> {
        check_dim(d)?;
        quad.validate()?;
        let yudin = Yudin::new(d + 2)?;
        let tail = yudin
            .tail_model()
            .times_power(1.0)
            .integral_from_infinity()?;
        let rule = quad.rule();
        let t = quad.t_max;
        let build = |width: f64| {
            let n = (t / width).ceil().max(1.0) as usize;
            let h = t / n as f64;
            let edges: Vec<f64> = (0..=n)
                .map(|i| if i == n { t } else { i as f64 * h })
                .collect();
            let mut values = vec![0.0; n + 1];
            values[n] = tail.eval(t);
            for i in (0..n).rev() {
                let piece = rule.integrate(&mut |s: f64| s * yudin.eval(s), edges[i], edges[i + 1]);
                values[i] = values[i + 1] + piece;
            }
            (edges, values)
        };
        let (edges, values) = build(quad.panel_width);
        let (fine_edges, fine_values) = build(0.5 * quad.panel_width);
        let mut error_estimate: f64 = 0.0;
        for (e, v) in edges.iter().zip(&values) {
            if let Some(k) = fine_edges.iter().position(|x| (x - e).abs() < 1e-12) {
                error_estimate = error_estimate.max((fine_values[k] - v).abs());
            }
        }
        if !(error_estimate <= quad.tol * values[0].abs().max(1.0)) {
            return Err(Error::Quadrature(format!(
                "H refinement changed values by {error_estimate:.3e}"
            )));
        }
        let q = yudin.q;
        Ok(GorbachevH {
            d,
            q,
            error_estimate,
            yudin,
            rule,
            edges: fine_edges,
            values: fine_values,
            tail,
        })
    }

    pub fn t_max(&self) -> f64 {
        *self.edges.last().unwrap()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.abs();
        let end = self.t_max();
        if t >= end {
            return self.tail.eval(t);
        }
        let n = self.edges.len() - 1;
        let h = end / n as f64;
        let mut i = ((t / h).floor() as usize).min(n - 1);
        while i > 0 && self.edges[i] > t {
            i -= 1;
        }
        while i + 1 < n && self.edges[i + 1] <= t {
            i += 1;
        }
        let right = self.edges[i + 1];
        self.values[i + 1]
            + self
                .rule
                .integrate(&mut |s: f64| s * self.yudin.eval(s), t, right)
    }

    pub fn at_zero(&self) -> f64 {
        self.values[0]
    }

    /// `h(x) = H(q_{d/2} |x|) / H(0)`.
    pub fn normalized(&self, x: f64) -> f64 {
        self.eval(self.q * x.abs()) / self.at_zero()
    }

    /// Expansion of `H` valid for large `t`.
    pub fn tail_model(&self) -> &ExpoSum {
        &self.tail
    }

    /// Leading constant `A^2 q^2 / (2d + 2)` in `H(t) ~ -c t^-(d+1)`.
    pub fn leading_constant(&self) -> f64 {
        let a = asymptotic_amplitude(self.d as f64 / 2.0);
        a * a * self.q * self.q / (2.0 * self.d as f64 + 2.0)
    }

    /// `H_{d/2-1} H (s)`.
    pub fn hankel(&self, s: f64, quad: &Quadrature) -> Result<HankelValue> {
        hankel_transform_tailed(
            &|u| self.eval(u),
            &self.tail,
            self.d as f64 / 2.0 - 1.0,
            s,
            quad,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HValue {
    pub value: f64,
    pub error_estimate: f64,
}

pub fn gorbachev_h(d: usize, t: f64, quad: &Quadrature) -> Result<HValue> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t = {t} must be nonnegative")));
    }
    let h = GorbachevH::new(d, quad)?;
    Ok(HValue {
        value: h.eval(t),
        error_estimate: h.error_estimate,
    })
}

/// Sign, monotonicity and `t^(d+1)` scaling of `H` on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HReport {
    pub d: usize,
    pub q: f64,
    pub h_at_zero: f64,
    /// Largest `H(t)` over grid points with `t >= q`; must be negative.
    pub max_value: f64,
    /// Largest decrease between consecutive grid points with `t >= q`.
    pub max_decrease: f64,
    /// Range of `H(t) t^(d+1)` over grid points in `[20, 50]`.
    pub scaled_min: f64,
    pub scaled_max: f64,
    /// Mean of `-H(t) t^(d+1)` over `[20, 50]`, a fitted decay constant.
    pub fitted_kappa: f64,
    pub leading_constant: f64,
    pub error_estimate: f64,
    pub negative: bool,
    pub monotone: bool,
    pub bounded: bool,
}

pub fn gorbachev_check(d: usize, grid: &[f64], quad: &Quadrature) -> Result<HReport> {
    let h = GorbachevH::new(d, quad)?;
    let mut max_value = f64::NEG_INFINITY;
    let mut max_decrease: f64 = 0.0;
    let mut prev: Option<f64> = None;
    let (mut smin, mut smax, mut ssum, mut scount) =
        (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0usize);
    for &t in grid {
        let v = h.eval(t);
        if t >= h.q {
            max_value = max_value.max(v);
            if let Some(p) = prev {
                max_decrease = max_decrease.max(p - v);
            }
            prev = Some(v);
        }
        if (20.0..=50.0).contains(&t) {
            let scaled = v * t.powi(d as i32 + 1);
            smin = smin.min(scaled);
            smax = smax.max(scaled);
            ssum += scaled;
            scount += 1;
        }
    }
    let fitted_kappa = if scount > 0 {
        -ssum / scount as f64
    } else {
        f64::NAN
    };
    // monotonicity up to the quadrature error
    let slack = 10.0 * h.error_estimate + 1e-14;
    Ok(HReport {
        d,
        q: h.q,
        h_at_zero: h.at_zero(),
        max_value,
        max_decrease,
        scaled_min: smin,
        scaled_max: smax,
        fitted_kappa,
        leading_constant: h.leading_constant(),
        error_estimate: h.error_estimate,
        negative: max_value < 0.0,
        monotone: max_decrease <= slack,
        bounded: scount == 0 || (smax < 0.0 && smin.is_finite()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YudinHatReport {
    pub d: usize,
    pub min_value: f64,
    pub at_zero: f64,
    pub max_beyond: f64,
    pub pass: bool,
}

/// Property (ii) of the Yudin function on an `s` grid: nonnegative transform,
/// vanishing at 0 and beyond `2.05`.
pub fn yudin_hat_check(d: usize, grid: &[f64], quad: &Quadrature) -> Result<YudinHatReport> {
    let y = Yudin::new(d)?;
    let tail = y.tail_model();
    let mut min_value = f64::INFINITY;
    let mut at_zero = 0.0;
    let mut max_beyond: f64 = 0.0;
    for &s in grid {
        let v = hankel_transform_tailed(&|u| y.eval(u), &tail, y.nu, s, quad)?.value;
        min_value = min_value.min(v);
        if s == 0.0 {
            at_zero = v;
        }
        if s > 2.05 {
            max_beyond = max_beyond.max(v.abs());
        }
    }
    let pass = min_value >= -1e-5 && max_beyond <= 1e-4 && at_zero.abs() <= 1e-5;
    Ok(YudinHatReport {
        d,
        min_value,
        at_zero,
        max_beyond,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectionReport {
    pub d: usize,
    pub max_difference: f64,
    pub worst_s: f64,
    pub pass: bool,
}

/// `H_{d/2-1} H = H_{d/2} Y_{d+2}` on an `s` grid.
pub fn h_y_connection(d: usize, grid: &[f64], quad: &Quadrature) -> Result<ConnectionReport> {
    let h = GorbachevH::new(d, quad)?;
    let y = Yudin::new(d + 2)?;
    let ytail = y.tail_model();
    let alpha = d as f64 / 2.0;
    let mut worst = 0.0;
    let mut worst_s = 0.0;
    for &s in grid {
        let lhs = h.hankel(s, quad)?.value;
        let rhs = hankel_transform_tailed(&|u| y.eval(u), &ytail, alpha, s, quad)?.value;
        if (lhs - rhs).abs() >= worst {
            worst = (lhs - rhs).abs();
            worst_s = s;
        }
    }
    Ok(ConnectionReport {
        d,
        max_difference: worst,
        worst_s,
        pass: worst <= 1e-5,
    })
}

/// `(t, Y_d(t))` rows.
pub fn yudin_table(spec: &RadialSpec) -> Result<Vec<[f64; 2]>> {
    spec.validate()?;
    let y = Yudin::new(spec.d)?;
    Ok(spec.grid.iter().map(|&t| [t, y.eval(t)]).collect())
}

/// `(s, H_{d/2-1} Y_d (s))` rows.
pub fn yudin_hat_table(spec: &RadialSpec) -> Result<Vec<[f64; 2]>> {
    spec.validate()?;
    let y = Yudin::new(spec.d)?;
    let tail = y.tail_model();
    spec.grid
        .iter()
        .map(|&s| {
            Ok([
                s,
                hankel_transform_tailed(&|u| y.eval(u), &tail, y.nu, s, &spec.quadrature)?.value,
            ])
        })
        .collect()
}

/// `(t, H(t))` rows.
pub fn gorbachev_table(spec: &RadialSpec) -> Result<Vec<[f64; 2]>> {
    spec.validate()?;
    let h = GorbachevH::new(spec.d, &spec.quadrature)?;
    Ok(spec.grid.iter().map(|&t| [t, h.eval(t)]).collect())
}

/// `(x, ball transform)` rows.
pub fn ball_table(spec: &RadialSpec) -> Result<Vec<[f64; 2]>> {
    spec.validate()?;
    spec.grid
        .iter()
        .map(|&x| Ok([x, ball_char_transform(spec.d, x)?]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yudin_examples() {
        for d in 1..=4 {
            assert_eq!(yudin_y(d, 0.0).unwrap(), 1.0);
            let y = Yudin::new(d).unwrap();
            assert_eq!(y.eval(y.q).abs(), 0.0);
        }
        assert!((yudin_y(1, PI).unwrap() + 1.0 / 3.0).abs() < 1e-14);
        // Taylor form against the direct quotient just inside the window
        for d in 1..=3 {
            let y = Yudin::new(d).unwrap();
            let t = y.q * (1.0 + 0.999 * SINGULAR_WINDOW);
            let j = special::bessel_j_unchecked(y.nu, t);
            let direct = j * j / (1.0 - t * t / (y.q * y.q));
            assert!((y.eval(t) - direct).abs() < 1e-7 * direct.abs(), "d={d}");
        }
    }

    #[test]
    fn sign_checks() {
        let grid = uniform_grid(0.0, 30.0, 0.01).unwrap();
        assert_eq!(grid.len(), 3001);
        for d in 1..=3 {
            let r = yudin_sign_check(d, &grid).unwrap();
            assert!(r.pass, "{r:?}");
        }
        assert!(yudin_sign_check(2, &[0.0]).unwrap().pass);
    }

    #[test]
    fn transforms_examples() {
        assert!((ball_char_transform(1, 0.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((ball_char_transform(2, 0.0).unwrap() - PI).abs() < 1e-13);
        assert!(ball_char_transform(1, PI).unwrap().abs() < 1e-15);
        assert!((sphere_transform(2, 0.0).unwrap() - 2.0 * PI).abs() < 1e-13);
        assert!((sphere_transform(3, 0.0).unwrap() - 4.0 * PI).abs() < 1e-13);
        assert!(sphere_transform(3, PI).unwrap().abs() < 1e-14);
        assert!(matches!(sphere_transform(1, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn hankel_of_ball_indicator() {
        let quad = Quadrature::default();
        let chi = |u: f64| if u <= 1.0 { 1.0 } else { 0.0 };
        for d in 1..=3usize {
            let alpha = d as f64 / 2.0 - 1.0;
            for &s in &[0.0, 0.5, 2.0, 7.3] {
                let h = hankel_transform(&chi, alpha, s, &quad).unwrap();
                let scaled = (2.0 * PI).powf(d as f64 / 2.0) * h.value;
                let want = ball_char_transform(d, s).unwrap();
                assert!(
                    (scaled - want).abs() < 1e-12,
                    "d={d} s={s}: {scaled} vs {want}"
                );
                assert_eq!(h.truncation_estimate, 0.0);
            }
        }
        let zero = hankel_transform(&|_| 0.0, 0.0, 1.0, &quad).unwrap();
        assert_eq!(zero.value, 0.0);
    }

    #[test]
    fn quadrature_validation() {
        let bad = Quadrature {
            t_max: 0.0,
            ..Quadrature::default()
        };
        assert!(bad.validate().is_err());
        assert!(RadialSpec::new(2, vec![1.0, 0.5], Quadrature::default()).is_err());
        assert!(RadialSpec::new(0, vec![], Quadrature::default()).is_err());
    }

    #[test]
    fn h_tail_matches_quadrature_at_t_max() {
        // H built with T = 60 and with T = 90 must agree at t = 30 and t = 75
        let a = GorbachevH::new(2, &Quadrature::default()).unwrap();
        let b = GorbachevH::new(
            2,
            &Quadrature {
                t_max: 90.0,
                ..Quadrature::default()
            },
        )
        .unwrap();
        for &t in &[0.0, 30.0, 75.0] {
            assert!(
                (a.eval(t) - b.eval(t)).abs() < 1e-11,
                "t={t}: {} vs {}",
                a.eval(t),
                b.eval(t)
            );
        }
    }
}
