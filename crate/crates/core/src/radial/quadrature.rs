//! Gauss–Legendre rules and panel integration.

use std::sync::OnceLock;

use num_complex::Complex64;

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order16() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(16))
    }

    pub fn integrate(&self, f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(m + h * x);
        }
        s * h
    }

    pub fn integrate_complex(&self, f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += f(m + h * x) * *w;
        }
        s * h
    }
}

// P_n(x) and P_n'(x)
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Sum of the rule over equal panels of width at most `width` covering `[a, b]`.
pub fn panel_integral(
    rule: &GaussLegendre,
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    width: f64,
) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let mut s = 0.0;
    for i in 0..n {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == n { b } else { lo + h };
        s += rule.integrate(f, lo, hi);
    }
    s
}

fn adaptive_complex(
    rule: &GaussLegendre,
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    whole: Complex64,
    tol: f64,
    depth: usize,
) -> Option<Complex64> {
    let m = 0.5 * (a + b);
    let left = rule.integrate_complex(f, a, m);
    let right = rule.integrate_complex(f, m, b);
    let both = left + right;
    if (both - whole).norm() <= tol {
        return Some(both);
    }
    if depth == 0 {
        return None;
    }
    Some(
        adaptive_complex(rule, f, a, m, left, 0.5 * tol, depth - 1)?
            + adaptive_complex(rule, f, m, b, right, 0.5 * tol, depth - 1)?,
    )
}

/// `int_0^inf f(v) dv` via `v = scale x / (1 - x)` and adaptive bisection on `[0, 1]`.
pub fn semi_infinite_complex(
    f: &dyn Fn(f64) -> Complex64,
    scale: f64,
    tol: f64,
) -> Option<Complex64> {
    let rule = GaussLegendre::order16();
    let g = |x: f64| {
        if x >= 1.0 {
            return Complex64::new(0.0, 0.0);
        }
        let one = 1.0 - x;
        let v = scale * x / one;
        let val = f(v) * (scale / (one * one));
        if val.is_finite() {
            val
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    // a few fixed cuts so the first estimate is not fooled
    let cuts = [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0];
    let mut total = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        let whole = rule.integrate_complex(&g, w[0], w[1]);
        total += adaptive_complex(rule, &g, w[0], w[1], whole, tol, 40)?;
    }
    Some(total)
}
