//! Dense revised simplex.
//!
//! Problems are `maximize c.x` subject to dense rows with sense `<=`, `=` or
//! `>=` and per-variable bounds that may be infinite. Internally every problem
//! is rewritten as `A z = b, z >= 0, b >= 0` and solved with a two-phase
//! revised simplex that keeps an explicit dense basis inverse. Pricing is
//! Dantzig's rule; after a run of degenerate pivots it falls back to Bland's
//! rule until the objective moves again.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Pivot and feasibility tolerance.
pub const PIVOT_TOL: f64 = 1e-9;
const OPT_TOL: f64 = 1e-9;
const DEGENERATE_STEP: f64 = 1e-12;
const DEGENERACY_THRESHOLD: usize = 25;
const REFACTOR_EVERY: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub senses: Vec<RowSense>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LpProblem {
    /// Maximize `objective . x` over `x >= 0` with no rows yet.
    pub fn new(objective: Vec<f64>) -> LpProblem {
        let n = objective.len();
        LpProblem {
            objective,
            rows: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, sense: RowSense, rhs: f64) -> &mut Self {
        self.rows.push(coeffs);
        self.senses.push(sense);
        self.rhs.push(rhs);
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.rows.len() != self.senses.len() || self.rows.len() != self.rhs.len() {
            return invalid("row, sense and rhs counts differ");
        }
        if self.lower.len() != n || self.upper.len() != n {
            return invalid("bound vectors do not match the number of variables");
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != n) {
            return invalid(format!("row {i} has the wrong length"));
        }
        let finite = self.objective.iter().all(|v| v.is_finite())
            && self.rows.iter().flatten().all(|v| v.is_finite())
            && self.rhs.iter().all(|v| v.is_finite());
        if !finite {
            return invalid("objective, rows and rhs must be finite");
        }
        if self.lower.iter().any(|&l| l.is_nan() || l == f64::INFINITY)
            || self
                .upper
                .iter()
                .any(|&u| u.is_nan() || u == f64::NEG_INFINITY)
        {
            return invalid("bounds must not be NaN, lower < +inf and upper > -inf");
        }
        Ok(())
    }

    /// Largest violation of rows and bounds at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for ((row, sense), &b) in self.rows.iter().zip(&self.senses).zip(&self.rhs) {
            let ax: f64 = row.iter().zip(x).map(|(a, v)| a * v).sum();
            let v = match sense {
                RowSense::Le => ax - b,
                RowSense::Ge => b - ax,
                RowSense::Eq => (ax - b).abs(),
            };
            worst = worst.max(v);
        }
        for ((&v, &l), &u) in x.iter().zip(&self.lower).zip(&self.upper) {
            worst = worst.max(l - v).max(v - u);
        }
        worst
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective_value: f64,
    /// One multiplier per row of the input problem.
    pub dual: Vec<f64>,
    pub dual_objective: f64,
    pub iterations: usize,
}

impl LpSolution {
    fn non_optimal(status: LpStatus, n: usize, m: usize, iterations: usize) -> LpSolution {
        LpSolution {
            status,
            x: vec![f64::NAN; n],
            objective_value: f64::NAN,
            dual: vec![f64::NAN; m],
            dual_objective: f64::NAN,
            iterations,
        }
    }

    pub fn duality_gap(&self) -> f64 {
        (self.objective_value - self.dual_objective).abs()
    }
}

#[derive(Clone, Copy, Debug)]
enum VarMap {
    Fixed(f64),
    Shift { col: usize, lower: f64 },
    Reflect { col: usize, upper: f64 },
    Split { pos: usize, neg: usize },
}

struct StandardForm {
    /// Column-major constraint matrix.
    cols: Vec<Vec<f64>>,
    b: Vec<f64>,
    cost: Vec<f64>,
    offset: f64,
    vars: Vec<VarMap>,
    /// +1 or -1 applied to each standard row to make its rhs nonnegative.
    row_sign: Vec<f64>,
    /// Column of a slack usable as the initial basic variable of each row.
    unit_slack: Vec<Option<usize>>,
    num_structural: usize,
}

fn standardize(p: &LpProblem) -> StandardForm {
    let n = p.num_vars();
    let mut vars = Vec::with_capacity(n);
    let mut ncols = 0usize;
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for j in 0..n {
        let (l, u) = (p.lower[j], p.upper[j]);
        let map = if l.is_finite() && u.is_finite() && l == u {
            VarMap::Fixed(l)
        } else if l.is_finite() {
            let col = ncols;
            ncols += 1;
            if u.is_finite() {
                bound_rows.push((col, u - l));
            }
            VarMap::Shift { col, lower: l }
        } else if u.is_finite() {
            let col = ncols;
            ncols += 1;
            VarMap::Reflect { col, upper: u }
        } else {
            let pos = ncols;
            ncols += 2;
            VarMap::Split { pos, neg: pos + 1 }
        };
        vars.push(map);
    }
    let num_structural = ncols;

    let m_orig = p.rows.len();
    let m = m_orig + bound_rows.len();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    let mut kinds = Vec::with_capacity(m);
    for ((row, &sense), &rhs) in p.rows.iter().zip(&p.senses).zip(&p.rhs) {
        let mut r = vec![0.0; num_structural];
        let mut shift = 0.0;
        for (j, &a) in row.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            match vars[j] {
                VarMap::Fixed(v) => shift += a * v,
                VarMap::Shift { col, lower } => {
                    r[col] += a;
                    shift += a * lower;
                }
                VarMap::Reflect { col, upper } => {
                    r[col] -= a;
                    shift += a * upper;
                }
                VarMap::Split { pos, neg } => {
                    r[pos] += a;
                    r[neg] -= a;
                }
            }
        }
        rows.push(r);
        b.push(rhs - shift);
        kinds.push(sense);
    }
    for &(col, width) in &bound_rows {
        let mut r = vec![0.0; num_structural];
        r[col] = 1.0;
        rows.push(r);
        b.push(width);
        kinds.push(RowSense::Le);
    }

    let mut cost = vec![0.0; num_structural];
    let mut offset = 0.0;
    for (j, &c) in p.objective.iter().enumerate() {
        match vars[j] {
            VarMap::Fixed(v) => offset += c * v,
            VarMap::Shift { col, lower } => {
                cost[col] += c;
                offset += c * lower;
            }
            VarMap::Reflect { col, upper } => {
                cost[col] -= c;
                offset += c * upper;
            }
            VarMap::Split { pos, neg } => {
                cost[pos] += c;
                cost[neg] -= c;
            }
        }
    }

    // slacks
    let mut slack_of_row = vec![None; m];
    let mut total = num_structural;
    for (i, kind) in kinds.iter().enumerate() {
        match kind {
            RowSense::Le => {
                slack_of_row[i] = Some((total, 1.0));
                total += 1;
            }
            RowSense::Ge => {
                slack_of_row[i] = Some((total, -1.0));
                total += 1;
            }
            RowSense::Eq => {}
        }
    }
    let mut cols = vec![vec![0.0; m]; total];
    for (i, r) in rows.iter().enumerate() {
        for (j, &a) in r.iter().enumerate() {
            cols[j][i] = a;
        }
    }
    let mut row_sign = vec![1.0; m];
    let mut unit_slack = vec![None; m];
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        row_sign[i] = sign;
        if sign < 0.0 {
            b[i] = -b[i];
            for col in cols.iter_mut().take(num_structural) {
                col[i] = -col[i];
            }
        }
        if let Some((c, coef)) = slack_of_row[i] {
            let v = coef * sign;
            cols[c][i] = v;
            if v > 0.0 {
                unit_slack[i] = Some(c);
            }
        }
    }
    cost.resize(total, 0.0);
    StandardForm {
        cols,
        b,
        cost,
        offset,
        vars,
        row_sign,
        unit_slack,
        num_structural,
    }
}

enum Phase {
    Optimal,
    Unbounded,
}

struct Simplex<'a> {
    m: usize,
    cols: &'a [Vec<f64>],
    b: &'a [f64],
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    can_enter: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    iterations: usize,
    max_iterations: usize,
}

impl<'a> Simplex<'a> {
    fn refactor(&mut self) -> Result<()> {
        let m = self.m;
        // Gauss-Jordan on [B | I]
        let mut a = vec![0.0; m * m];
        for (r, &j) in self.basis.iter().enumerate() {
            for i in 0..m {
                a[i * m + r] = self.cols[j][i];
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let (piv, best) = (c..m)
                .map(|i| (i, a[i * m + c].abs()))
                .fold((c, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
            if best < 1e-13 {
                return Err(Error::SolverFailure("basis matrix became singular".into()));
            }
            if piv != c {
                for k in 0..m {
                    a.swap(piv * m + k, c * m + k);
                    inv.swap(piv * m + k, c * m + k);
                }
            }
            let d = a[c * m + c];
            for k in 0..m {
                a[c * m + k] /= d;
                inv[c * m + k] /= d;
            }
            for i in 0..m {
                if i == c {
                    continue;
                }
                let f = a[i * m + c];
                if f == 0.0 {
                    continue;
                }
                for k in 0..m {
                    a[i * m + k] -= f * a[c * m + k];
                    inv[i * m + k] -= f * inv[c * m + k];
                }
            }
        }
        self.binv = inv;
        self.xb = (0..m)
            .map(|r| (0..m).map(|i| self.binv[r * m + i] * self.b[i]).sum())
            .collect();
        Ok(())
    }

    fn duals(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (r, &j) in self.basis.iter().enumerate() {
            let cb = cost[j];
            if cb == 0.0 {
                continue;
            }
            for (i, yi) in y.iter_mut().enumerate() {
                *yi += cb * self.binv[r * m + i];
            }
        }
        y
    }

    fn reduced_cost(&self, cost: &[f64], y: &[f64], j: usize) -> f64 {
        cost[j]
            - self.cols[j]
                .iter()
                .zip(y)
                .map(|(a, yi)| a * yi)
                .sum::<f64>()
    }

    fn column(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let col = &self.cols[j];
        (0..m)
            .map(|r| (0..m).map(|i| self.binv[r * m + i] * col[i]).sum())
            .collect()
    }

    fn pivot(&mut self, r: usize, q: usize, alpha: &[f64], theta: f64) {
        let m = self.m;
        for (i, x) in self.xb.iter_mut().enumerate() {
            *x -= theta * alpha[i];
        }
        self.xb[r] = theta;
        let ar = alpha[r];
        for k in 0..m {
            self.binv[r * m + k] /= ar;
        }
        for i in 0..m {
            if i == r || alpha[i] == 0.0 {
                continue;
            }
            let f = alpha[i];
            for k in 0..m {
                self.binv[i * m + k] -= f * self.binv[r * m + k];
            }
        }
        self.is_basic[self.basis[r]] = false;
        self.is_basic[q] = true;
        self.basis[r] = q;
        self.iterations += 1;
    }

    fn run(&mut self, cost: &[f64]) -> Result<Phase> {
        let mut degenerate_streak = 0usize;
        let mut since_refactor = 0usize;
        let mut verified = false;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(Error::SolverFailure(format!(
                    "iteration limit {} reached",
                    self.max_iterations
                )));
            }
            if since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
                since_refactor = 0;
            }
            let bland = degenerate_streak >= DEGENERACY_THRESHOLD;
            let y = self.duals(cost);
            let mut entering: Option<(usize, f64)> = None;
            for j in 0..self.cols.len() {
                if self.is_basic[j] || !self.can_enter[j] {
                    continue;
                }
                let d = self.reduced_cost(cost, &y, j);
                if d > OPT_TOL {
                    if bland {
                        entering = Some((j, d));
                        break;
                    }
                    if entering.is_none_or(|(_, best)| d > best) {
                        entering = Some((j, d));
                    }
                }
            }
            let Some((q, _)) = entering else {
                // confirm optimality on a fresh factorization before stopping
                if verified {
                    return Ok(Phase::Optimal);
                }
                self.refactor()?;
                since_refactor = 0;
                verified = true;
                continue;
            };
            verified = false;
            let alpha = self.column(q);
            let mut leave: Option<(usize, f64)> = None;
            for (r, &a) in alpha.iter().enumerate() {
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.xb[r].max(0.0) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, bratio)) => {
                        if ratio < bratio - 1e-12 {
                            Some((r, ratio))
                        } else if ratio <= bratio + 1e-12 {
                            let better = if bland {
                                self.basis[r] < self.basis[br]
                            } else {
                                a > alpha[br]
                            };
                            if better {
                                Some((r, ratio))
                            } else {
                                Some((br, bratio))
                            }
                        } else {
                            Some((br, bratio))
                        }
                    }
                };
            }
            let Some((r, theta)) = leave else {
                return Ok(Phase::Unbounded);
            };
            if theta <= DEGENERATE_STEP {
                degenerate_streak += 1;
            } else {
                degenerate_streak = 0;
            }
            self.pivot(r, q, &alpha, theta);
            since_refactor += 1;
        }
    }
}

/// Solves the problem. `Infeasible` and `Unbounded` are statuses, not errors;
/// `Err(SolverFailure)` signals a numerical breakdown.
pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars();
    let m_orig = p.rows.len();
    if p.lower.iter().zip(&p.upper).any(|(l, u)| l > u) {
        return Ok(LpSolution::non_optimal(LpStatus::Infeasible, n, m_orig, 0));
    }
    let sf = standardize(p);
    let m = sf.b.len();

    // artificial columns for rows without a usable slack
    let mut cols = sf.cols.clone();
    let first_art = cols.len();
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        match sf.unit_slack[i] {
            Some(c) => basis.push(c),
            None => {
                let mut col = vec![0.0; m];
                col[i] = 1.0;
                basis.push(cols.len());
                cols.push(col);
            }
        }
    }
    let total = cols.len();
    let mut is_basic = vec![false; total];
    for &j in &basis {
        is_basic[j] = true;
    }
    let mut binv = vec![0.0; m * m];
    for i in 0..m {
        binv[i * m + i] = 1.0;
    }
    let mut sx = Simplex {
        m,
        cols: &cols,
        b: &sf.b,
        basis,
        is_basic,
        can_enter: vec![true; total],
        binv,
        xb: sf.b.clone(),
        iterations: 0,
        max_iterations: 50 * (m + total) + 1000,
    };

    if total > first_art {
        let phase1: Vec<f64> = (0..total)
            .map(|j| if j >= first_art { -1.0 } else { 0.0 })
            .collect();
        sx.run(&phase1)?;
        let infeas: f64 = sx
            .basis
            .iter()
            .zip(&sx.xb)
            .filter(|(&j, _)| j >= first_art)
            .map(|(_, &v)| v.max(0.0))
            .sum();
        let scale = 1.0 + sf.b.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if infeas > 1e-9 * scale {
            return Ok(LpSolution::non_optimal(
                LpStatus::Infeasible,
                n,
                m_orig,
                sx.iterations,
            ));
        }
        for j in first_art..total {
            sx.can_enter[j] = false;
        }
        // drive zero-level artificials out of the basis where possible
        for r in 0..m {
            if sx.basis[r] < first_art {
                continue;
            }
            let row: Vec<f64> = (0..m).map(|i| sx.binv[r * m + i]).collect();
            let pick = (0..first_art).find(|&j| {
                !sx.is_basic[j]
                    && cols[j]
                        .iter()
                        .zip(&row)
                        .map(|(a, b)| a * b)
                        .sum::<f64>()
                        .abs()
                        > 1e-7
            });
            if let Some(q) = pick {
                let alpha = sx.column(q);
                sx.pivot(r, q, &alpha, sx.xb[r].max(0.0));
            }
        }
        sx.refactor()?;
    }

    let mut cost = sf.cost.clone();
    cost.resize(total, 0.0);
    if let Phase::Unbounded = sx.run(&cost)? {
        return Ok(LpSolution::non_optimal(
            LpStatus::Unbounded,
            n,
            m_orig,
            sx.iterations,
        ));
    }
    sx.refactor()?;

    let mut z = vec![0.0; total];
    for (r, &j) in sx.basis.iter().enumerate() {
        z[j] = sx.xb[r].max(0.0);
    }
    let x: Vec<f64> = sf
        .vars
        .iter()
        .map(|v| match *v {
            VarMap::Fixed(val) => val,
            VarMap::Shift { col, lower } => lower + z[col],
            VarMap::Reflect { col, upper } => upper - z[col],
            VarMap::Split { pos, neg } => z[pos] - z[neg],
        })
        .collect();
    debug_assert!(sf.num_structural <= total);
    let y = sx.duals(&cost);
    let dual_objective = sf.offset + y.iter().zip(&sf.b).map(|(a, b)| a * b).sum::<f64>();
    let dual = (0..m_orig).map(|i| y[i] * sf.row_sign[i]).collect();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective_value: p.objective_at(&x),
        x,
        dual,
        dual_objective,
        iterations: sx.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_maximum() {
        let mut p = LpProblem::new(vec![1.0, 1.0]);
        p.add_row(vec![1.0, 0.0], RowSense::Le, 1.0);
        p.add_row(vec![0.0, 1.0], RowSense::Le, 1.0);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 2.0).abs() < 1e-12);
        assert!((s.dual_objective - 2.0).abs() < 1e-12);
        assert_eq!(s.dual, vec![1.0, 1.0]);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut p = LpProblem::new(vec![1.0]);
        p.add_row(vec![1.0], RowSense::Le, -1.0);
        assert_eq!(solve(&p).unwrap().status, LpStatus::Infeasible);
        let mut p = LpProblem::new(vec![1.0]);
        p.set_bounds(0, 2.0, 1.0);
        assert_eq!(solve(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let p = LpProblem::new(vec![1.0]);
        assert_eq!(solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn free_and_negative_variables() {
        // max -|x - 3| style: max t s.t. t <= x - 3, t <= 3 - x, x free, t free
        let mut p = LpProblem::new(vec![0.0, 1.0]);
        p.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
        p.set_bounds(1, f64::NEG_INFINITY, f64::INFINITY);
        p.add_row(vec![-1.0, 1.0], RowSense::Le, -3.0);
        p.add_row(vec![1.0, 1.0], RowSense::Le, 3.0);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(s.objective_value.abs() < 1e-12);
        assert!((s.x[0] - 3.0).abs() < 1e-12);

        // min x over x in [-5, -2]
        let mut p = LpProblem::new(vec![-1.0]);
        p.set_bounds(0, -5.0, -2.0);
        let s = solve(&p).unwrap();
        assert!((s.x[0] + 5.0).abs() < 1e-12);
        // upper bound only
        let mut p = LpProblem::new(vec![1.0]);
        p.set_bounds(0, f64::NEG_INFINITY, 4.5);
        assert!((solve(&p).unwrap().x[0] - 4.5).abs() < 1e-12);
    }

    #[test]
    fn equality_and_ge_rows_need_phase_one() {
        // max x + 2y, x + y = 4, x - y >= 1, x, y >= 0  -> x = 2.5, y = 1.5
        let mut p = LpProblem::new(vec![1.0, 2.0]);
        p.add_row(vec![1.0, 1.0], RowSense::Eq, 4.0);
        p.add_row(vec![1.0, -1.0], RowSense::Ge, 1.0);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 5.5).abs() < 1e-12);
        assert!(p.max_violation(&s.x) < 1e-12);
        assert!(s.duality_gap() < 1e-10);
    }

    #[test]
    fn redundant_equalities() {
        let mut p = LpProblem::new(vec![1.0, 1.0]);
        p.add_row(vec![1.0, 1.0], RowSense::Eq, 2.0);
        p.add_row(vec![2.0, 2.0], RowSense::Eq, 4.0);
        p.add_row(vec![1.0, 0.0], RowSense::Le, 1.5);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let mut p = LpProblem::new(vec![0.75, -150.0, 0.02, -6.0]);
        p.add_row(vec![0.25, -60.0, -0.04, 9.0], RowSense::Le, 0.0);
        p.add_row(vec![0.5, -90.0, -0.02, 3.0], RowSense::Le, 0.0);
        p.add_row(vec![0.0, 0.0, 1.0, 0.0], RowSense::Le, 1.0);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 0.05).abs() < 1e-10);
    }

    #[test]
    fn deterministic_output() {
        let mut p = LpProblem::new(vec![3.0, 2.0, 4.0]);
        p.add_row(vec![1.0, 1.0, 2.0], RowSense::Le, 4.0);
        p.add_row(vec![2.0, 0.0, 3.0], RowSense::Le, 5.0);
        p.add_row(vec![2.0, 1.0, 3.0], RowSense::Le, 7.0);
        let a = serde_json::to_string(&solve(&p).unwrap()).unwrap();
        let b = serde_json::to_string(&solve(&p).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_malformed_problems() {
        let mut p = LpProblem::new(vec![1.0, 1.0]);
        p.rows.push(vec![1.0]);
        p.senses.push(RowSense::Le);
        p.rhs.push(1.0);
        assert!(matches!(solve(&p), Err(Error::InvalidInput(_))));
    }
}
