//! The extremal nonnegative trinomial `1 + a cos t + b cos 4t` and the
//! lower bound it gives for the Delsarte constant of
//! `Q = (-5,-3) ∪ (-2,2) ∪ (3,5)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::density::{self, Interval, PeriodicSet, Rational};
use crate::error::{Error, Result};
use crate::extremal;
use crate::group::{Group, Normalization, Subset};

pub const NONNEG_TOL: f64 = 1e-9;
const SINGULAR_TOL: f64 = 1e-12;
// below this `z` the coefficients are replaced by their limits at 0
const LIMIT_ZONE: f64 = 1e-9;
const SCAN_POINTS: usize = 1000;
const GOLDEN_WIDTH: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trinomial {
    pub a: f64,
    pub b: f64,
}

impl Trinomial {
    pub fn new(a: f64, b: f64) -> Self {
        Trinomial { a, b }
    }

    pub fn eval(&self, t: f64) -> f64 {
        1.0 + self.a * t.cos() + self.b * (4.0 * t).cos()
    }

    /// `T(0) = 1 + a + b`.
    pub fn value(&self) -> f64 {
        1.0 + self.a + self.b
    }
}

fn d_of(z: f64) -> f64 {
    4.0 * z.cos() * (4.0 * z).sin() - (4.0 * z).cos() * z.sin()
}

/// The critical family `h_z`: `a = 4 sin 4z / d`, `b = sin z / d`,
/// `d = 4 cos z sin 4z - cos 4z sin z`, with the limit `(16/15, 1/15)` at `z = 0`.
pub fn critical_coeffs(z: f64) -> Result<Trinomial> {
    if !(0.0..=PI / 4.0).contains(&z) {
        return Err(Error::Domain(format!("z = {z} outside [0, pi/4]")));
    }
    if z <= LIMIT_ZONE {
        return Ok(Trinomial::new(16.0 / 15.0, 1.0 / 15.0));
    }
    let d = d_of(z);
    if d.abs() <= SINGULAR_TOL {
        return Err(Error::SingularPoint(z));
    }
    Ok(Trinomial::new(4.0 * (4.0 * z).sin() / d, z.sin() / d))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonnegReport {
    pub pass: bool,
    pub min_value: f64,
    pub argmin: f64,
}

fn ternary_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

/// Minimum over a uniform grid of `[0, pi]`, each grid local minimum refined
/// by ternary search on its neighbouring cells.
pub fn is_nonneg(t: &Trinomial, grid_size: usize) -> Result<NonnegReport> {
    if grid_size < 1000 {
        return Err(Error::InvalidInput(format!(
            "grid_size must be at least 1000, got {grid_size}"
        )));
    }
    let step = PI / grid_size as f64;
    let values: Vec<f64> = (0..=grid_size).map(|i| t.eval(i as f64 * step)).collect();
    let f = |x: f64| t.eval(x);
    let mut best = (values[0], 0.0);
    for i in 0..=grid_size {
        let left = if i == 0 { f64::INFINITY } else { values[i - 1] };
        let right = if i == grid_size {
            f64::INFINITY
        } else {
            values[i + 1]
        };
        if values[i] > left || values[i] > right {
            continue;
        }
        let lo = (i as f64 - 1.0).max(0.0) * step;
        let hi = ((i + 1).min(grid_size)) as f64 * step;
        let x = ternary_min(&f, lo, hi);
        for (v, at) in [(values[i], i as f64 * step), (f(x), x)] {
            if v < best.0 {
                best = (v, at);
            }
        }
    }
    Ok(NonnegReport {
        pass: best.0 >= -NONNEG_TOL,
        min_value: best.0,
        argmin: best.1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrinomialOptimum {
    pub z_star: f64,
    pub value: f64,
    pub coeffs: Trinomial,
    pub nonneg: NonnegReport,
}

fn objective(z: f64) -> f64 {
    critical_coeffs(z)
        .map(|t| t.value())
        .unwrap_or(f64::NEG_INFINITY)
}

/// Maximizes `1 + a(z) + b(z)` over `[0, pi/4]`: grid scan, then golden section
/// on the best bracket down to width `1e-10`.
pub fn optimize_trinomial() -> Result<TrinomialOptimum> {
    let hi = PI / 4.0;
    let step = hi / SCAN_POINTS as f64;
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=SCAN_POINTS {
        let v = objective(i as f64 * step);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut lo = best_i.saturating_sub(1) as f64 * step;
    let mut up = ((best_i + 1).min(SCAN_POINTS)) as f64 * step;
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = up - r * (up - lo);
    let mut x2 = lo + r * (up - lo);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    while up - lo > GOLDEN_WIDTH {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (up - lo);
            f2 = objective(x2);
        } else {
            up = x2;
            x2 = x1;
            f2 = f1;
            x1 = up - r * (up - lo);
            f1 = objective(x1);
        }
    }
    let mut z_star = 0.5 * (lo + up);
    // never report something worse than the scanned grid point
    if objective(z_star) < best_v {
        z_star = best_i as f64 * step;
    }
    let coeffs = critical_coeffs(z_star)?;
    let nonneg = is_nonneg(&coeffs, 100_000)?;
    if !nonneg.pass {
        return Err(Error::Internal(format!(
            "optimal trinomial is negative ({:.3e} at t = {})",
            nonneg.min_value, nonneg.argmin
        )));
    }
    Ok(TrinomialOptimum {
        z_star,
        value: coeffs.value(),
        coeffs,
        nonneg,
    })
}

/// `Delta(t) = (1 - |t|)_+`.
pub fn triangle(t: f64) -> f64 {
    (1.0 - t.abs()).max(0.0)
}

/// `Phi = Delta * mu` with `mu = delta_0 + a/2 (delta_1 + delta_-1) + b/2 (delta_4 + delta_-4)`.
pub fn phi(t: &Trinomial, x: f64) -> f64 {
    triangle(x)
        + 0.5 * t.a * (triangle(x - 1.0) + triangle(x + 1.0))
        + 0.5 * t.b * (triangle(x - 4.0) + triangle(x + 4.0))
}

/// `Phi^(t) = T(t) (sin(t/2) / (t/2))^2` under `f^(t) = int f(x) e^{-itx} dx`.
pub fn phi_hat(t: &Trinomial, s: f64) -> f64 {
    let h = 0.5 * s;
    let sinc = if h.abs() < 1e-8 {
        1.0 - h * h / 6.0
    } else {
        h.sin() / h
    };
    t.eval(s) * sinc * sinc
}

/// Closure of `Q`: `[-5,-3] ∪ [-2,2] ∪ [3,5]`.
pub fn in_q_closure(x: f64) -> bool {
    let y = x.abs();
    y <= 2.0 || (3.0..=5.0).contains(&y)
}

/// `Q` as open intervals.
pub fn q_intervals() -> Vec<Interval> {
    vec![
        Interval::open(-5.0, -3.0),
        Interval::open(-2.0, 2.0),
        Interval::open(3.0, 5.0),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub bound: f64,
    pub trinomial: Trinomial,
    pub z_star: f64,
    pub checks: Vec<Check>,
}

/// Grid of `[-6, 6]` with step `1e-3`, built from integers so the kinks are hit exactly.
pub fn phi_grid() -> Vec<f64> {
    (-6000..=6000).map(|i| i as f64 / 1000.0).collect()
}

/// Checks the construction `Phi` for the optimal trinomial and returns `D(Q) >= 1 + a + b`.
pub fn example51_lower_bound() -> Result<LowerBound> {
    let opt = optimize_trinomial()?;
    let lb = check_construction(&opt.coeffs, opt.z_star);
    if let Some(bad) = lb.checks.iter().find(|c| !c.pass) {
        return Err(Error::Construction(format!(
            "check `{}` failed ({:e})",
            bad.name, bad.detail
        )));
    }
    Ok(lb)
}

/// Runs every check on `Phi` built from `tri`, without failing early.
pub fn check_construction(tri: &Trinomial, z_star: f64) -> LowerBound {
    let grid = phi_grid();
    let values: Vec<f64> = grid.iter().map(|&x| phi(tri, x)).collect();
    let mut checks = Vec::new();

    let at0 = phi(tri, 0.0);
    checks.push(Check {
        name: "phi_at_zero".into(),
        pass: at0 == 1.0,
        detail: at0 - 1.0,
    });

    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    checks.push(Check {
        name: "phi_nonnegative".into(),
        pass: min >= 0.0,
        detail: min,
    });

    let outside = grid
        .iter()
        .zip(&values)
        .filter(|(x, _)| !in_q_closure(**x))
        .map(|(_, v)| v.abs())
        .fold(0.0, f64::max);
    checks.push(Check {
        name: "phi_support".into(),
        pass: outside == 0.0,
        detail: outside,
    });

    let hat_min = (0..=100_000)
        .map(|i| phi_hat(tri, i as f64 * 1e-3))
        .fold(f64::INFINITY, f64::min);
    checks.push(Check {
        name: "phi_hat_nonnegative".into(),
        pass: hat_min >= -NONNEG_TOL,
        detail: hat_min,
    });

    // trapezoid is exact here: Phi is piecewise linear with kinks on the grid
    let h = 1e-3;
    let trap: f64 = values.windows(2).map(|w| 0.5 * h * (w[0] + w[1])).sum();
    let exact = tri.value();
    checks.push(Check {
        name: "phi_integral".into(),
        pass: (trap - exact).abs() <= 1e-9,
        detail: trap - exact,
    });

    LowerBound {
        bound: exact,
        trinomial: *tri,
        z_star,
        checks,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileCase {
    pub weight: f64,
    pub n: usize,
    pub m: usize,
    pub value: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    /// `D(W) = 2` for `W = (-2, 2)` through discretized tilings.
    pub tile_cases: Vec<TileCase>,
    pub lower_bound: f64,
    pub exceeds: bool,
    /// Best density of `L` with `(L - L) ∩ Q = {0}` among periodic integer sets.
    pub packing_density: Rational,
    pub packing_witness: PeriodicSet,
    /// Density of `2Z`, which tiles with `(-1, 1)`.
    pub lattice_density: Rational,
    /// An element of `2Z ∩ Q` other than 0.
    pub lattice_conflict: Option<u64>,
    pub pass: bool,
}

pub const TILE_CASES: [(f64, usize); 5] = [(0.5, 8), (0.5, 16), (0.5, 24), (0.25, 16), (0.25, 32)];

fn discretized_tile(weight: f64, n: usize) -> Result<TileCase> {
    let m = (2.0 / weight).round() as usize;
    let g = Group::new(&[n], Normalization::Weight(weight))?;
    let h = Subset::from_indices(&g, 0..m)?;
    let lambda = Subset::from_indices(&g, (0..n).step_by(m))?;
    let report = extremal::verify_tile_theorem(&g, &h, &lambda, &Subset::empty(&g))?;
    let value = report.lhs;
    Ok(TileCase {
        weight,
        n,
        m,
        value,
        pass: report.pass && (value - 2.0).abs() <= 1e-9,
    })
}

/// `D(Q) > D(W) = 2` and the `2/5` versus `1/2` density comparison.
pub fn example51_comparison() -> Result<Comparison> {
    let tile_cases = TILE_CASES
        .iter()
        .map(|&(w, n)| discretized_tile(w, n))
        .collect::<Result<Vec<_>>>()?;
    let lower_bound = example51_lower_bound()?.bound;
    let forbidden = density::integer_shadow(&q_intervals())?;
    let search = density::max_density_search(&forbidden, density::MAX_SEARCH_PERIOD)?;
    let lattice = PeriodicSet::new(2, vec![0])?;
    let lattice_density = density::auud_periodic(&lattice);
    let lattice_conflict = lattice.forbidden_hit(&forbidden);
    let exceeds = lower_bound > 2.0;
    let pass = tile_cases.iter().all(|c| c.pass)
        && exceeds
        && search.density < lattice_density
        && lattice_conflict.is_some();
    Ok(Comparison {
        tile_cases,
        lower_bound,
        exceeds,
        packing_density: search.density,
        packing_witness: search.witness,
        lattice_density,
        lattice_conflict,
        pass,
    })
}

/// `(x, Phi(x))` rows on [`phi_grid`].
pub fn phi_table(tri: &Trinomial) -> Vec<[f64; 2]> {
    phi_grid().into_iter().map(|x| [x, phi(tri, x)]).collect()
}
