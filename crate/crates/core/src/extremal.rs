//! Extremal constants `C(Omega+, Omega-)`, `T(Omega)`, `D(Omega+)` on finite
//! abelian groups, and verifiers for the structural theorems about them.
//!
//! The constant is the optimum of the linear program
//!
//! ```text
//! maximize   w * sum_x f(x)
//! subject to f(0) = 1,  f(x) = f(-x),
//!            f^(chi) >= 0            for every character chi,
//!            f(x) <= 0               for x outside Omega+,
//!            f(x) >= 0               for x outside Omega-.
//! ```
//!
//! Symmetry is built in: there is one LP variable per orbit `{x, -x}`, and one
//! positivity row per conjugate pair of characters.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::density;
use crate::error::{invalid, Error, Result};
use crate::group::{Group, GroupFunction, Subset, SymSet};
use crate::lp::{self, LpProblem, LpStatus, RowSense};
use crate::posdef;

/// Absolute slack used by every verifier.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalStatus {
    Optimal,
    /// `0 ∉ Omega+`: the function class is empty and the supremum is read as 0.
    InfeasibleZero,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub value: f64,
    /// One optimal function. Optima are not unique; this is a witness.
    pub optimizer: GroupFunction,
    pub spectrum: Vec<f64>,
    pub status: ExtremalStatus,
    pub warnings: Vec<String>,
    pub lp_iterations: usize,
}

/// A finite abelian group described only by what the LP needs.
struct Arena {
    size: usize,
    neg: Vec<usize>,
    weight: f64,
    /// `Re chi(x)` for one character of each conjugate pair.
    characters: Vec<Vec<f64>>,
}

fn cos_table(l: usize) -> Vec<f64> {
    (0..l)
        .map(|m| (2.0 * PI * m as f64 / l as f64).cos())
        .collect()
}

impl Arena {
    fn of_group(g: &Group) -> Arena {
        let l = g.exponent();
        let cos = cos_table(l);
        let neg = g.negation_table();
        let characters = g
            .elements()
            .filter(|&k| neg[k] >= k)
            .map(|k| g.elements().map(|x| cos[g.phase(k, x)]).collect())
            .collect();
        Arena {
            size: g.size(),
            neg,
            weight: g.weight(),
            characters,
        }
    }

    /// The subgroup `K` with counting measure; its characters are the distinct
    /// restrictions of characters of `G`.
    fn of_subgroup(g: &Group, k: &[usize]) -> Arena {
        let l = g.exponent();
        let cos = cos_table(l);
        let pos: std::collections::HashMap<usize, usize> =
            k.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let neg = k.iter().map(|&x| pos[&g.neg(x)]).collect();
        let mut seen = BTreeSet::new();
        let mut characters = Vec::new();
        for ch in g.elements() {
            let phases: Vec<usize> = k.iter().map(|&x| g.phase(ch, x)).collect();
            let conj: Vec<usize> = phases.iter().map(|&p| (l - p) % l).collect();
            if seen.contains(&phases) || seen.contains(&conj) {
                continue;
            }
            characters.push(phases.iter().map(|&p| cos[p]).collect());
            seen.insert(phases);
        }
        Arena {
            size: k.len(),
            neg,
            weight: 1.0,
            characters,
        }
    }

    /// The quotient `G/K` with counting measure, cosets ordered by their
    /// smallest element. Characters are those of `G` that are trivial on `K`.
    fn of_quotient(g: &Group, k: &[usize]) -> (Arena, Vec<usize>) {
        let l = g.exponent();
        let cos = cos_table(l);
        let mut coset_of = vec![usize::MAX; g.size()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &y in k {
                coset_of[g.add(x, y)] = id;
            }
        }
        let neg = reps.iter().map(|&r| coset_of[g.neg(r)]).collect();
        let gneg = g.negation_table();
        let characters = g
            .elements()
            .filter(|&ch| gneg[ch] >= ch && k.iter().all(|&y| g.phase(ch, y) == 0))
            .map(|ch| reps.iter().map(|&r| cos[g.phase(ch, r)]).collect())
            .collect();
        (
            Arena {
                size: reps.len(),
                neg,
                weight: 1.0,
                characters,
            },
            coset_of,
        )
    }
}

struct LpOutcome {
    value: f64,
    values: Vec<f64>,
    iterations: usize,
}

fn solve_arena(arena: &Arena, plus: &[bool], minus: &[bool]) -> Result<LpOutcome> {
    let n = arena.size;
    if !plus[0] {
        return Ok(LpOutcome {
            value: 0.0,
            values: vec![0.0; n],
            iterations: 0,
        });
    }
    // orbits {x, -x} other than {0}; skip orbits forced to zero
    let mut orbits: Vec<(usize, usize)> = Vec::new();
    let mut bounds = Vec::new();
    for x in 1..n {
        let y = arena.neg[x];
        if y < x {
            continue;
        }
        let (lo, hi) = match (plus[x], minus[x]) {
            (true, true) => (f64::NEG_INFINITY, f64::INFINITY),
            (true, false) => (0.0, f64::INFINITY),
            (false, true) => (f64::NEG_INFINITY, 0.0),
            (false, false) => continue,
        };
        orbits.push((x, y));
        bounds.push((lo, hi));
    }
    let orbit_size = |&(x, y): &(usize, usize)| if x == y { 1.0 } else { 2.0 };
    let mut problem = LpProblem::new(orbits.iter().map(orbit_size).collect());
    for (j, &(lo, hi)) in bounds.iter().enumerate() {
        problem.set_bounds(j, lo, hi);
    }
    for chi in &arena.characters {
        let row: Vec<f64> = orbits
            .iter()
            .map(|&(x, y)| if x == y { chi[x] } else { chi[x] + chi[y] })
            .collect();
        // f^(chi)/w = chi(0) f(0) + sum over orbits >= 0
        problem.add_row(row, RowSense::Ge, -chi[0]);
    }
    let sol = lp::solve(&problem)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::SolverFailure(format!(
            "extremal LP reported {:?}; the problem is always feasible and bounded",
            sol.status
        )));
    }
    let mut values = vec![0.0; n];
    values[0] = 1.0;
    for (&(x, y), &v) in orbits.iter().zip(&sol.x) {
        values[x] = v;
        values[y] = v;
    }
    let value = arena.weight * values.iter().sum::<f64>();
    Ok(LpOutcome {
        value,
        values,
        iterations: sol.iterations,
    })
}

fn prepare(g: &Group, set: &Subset, role: &str, warnings: &mut Vec<String>) -> Result<Vec<bool>> {
    if !g.same_shape(set.group()) {
        return invalid(format!("{role} lives in a different group"));
    }
    let (sym, dropped) = SymSet::symmetrize(set.clone());
    if dropped {
        warnings.push(format!(
            "{role} was not symmetric; replaced by its intersection with its negation"
        ));
    }
    Ok(sym.mask().to_vec())
}

/// `C(Omega+, Omega-)` computed exactly by linear programming.
pub fn two_set_constant(g: &Group, plus: &Subset, minus: &Subset) -> Result<ExtremalResult> {
    let mut warnings = Vec::new();
    let p = prepare(g, plus, "omega_plus", &mut warnings)?;
    let m = prepare(g, minus, "omega_minus", &mut warnings)?;
    if !p[0] {
        return Ok(ExtremalResult {
            value: 0.0,
            optimizer: GroupFunction::zero(g),
            spectrum: vec![0.0; g.size()],
            status: ExtremalStatus::InfeasibleZero,
            warnings,
            lp_iterations: 0,
        });
    }
    let arena = Arena::of_group(g);
    let out = solve_arena(&arena, &p, &m)?;
    let optimizer = GroupFunction::new(g, out.values)?;
    let spectrum = optimizer.dft().real_values()?;
    Ok(ExtremalResult {
        value: out.value,
        optimizer,
        spectrum,
        status: ExtremalStatus::Optimal,
        warnings,
        lp_iterations: out.iterations,
    })
}

/// Turán constant `T(Omega) = C(Omega, Omega)`.
pub fn turan(g: &Group, omega: &Subset) -> Result<ExtremalResult> {
    two_set_constant(g, omega, omega)
}

/// Delsarte constant `D(Omega+) = C(Omega+, G)`.
pub fn delsarte(g: &Group, plus: &Subset) -> Result<ExtremalResult> {
    two_set_constant(g, plus, &Subset::full(g))
}

/// Largest `m_G(A)` over sets with `A - A ⊆ Omega+`, together with a maximizing `A`.
///
/// The normalized autocorrelation of `A` lies in every class `F(Omega+, Omega-)`,
/// so this is a lower bound for the constant. Exhaustive clique search; groups
/// up to 128 elements.
pub fn difference_subset_lower_bound(g: &Group, plus: &Subset) -> Result<(f64, Subset)> {
    let n = g.size();
    if n > 128 {
        return invalid("exhaustive difference-set search supports at most 128 elements");
    }
    let (sym, _) = SymSet::symmetrize(plus.clone());
    if !sym.contains(0) {
        return Ok((0.0, Subset::empty(g)));
    }
    let adj: Vec<u128> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y != x && sym.contains(g.sub(x, y)))
                .fold(0u128, |m, y| m | 1 << y)
        })
        .collect();
    fn expand(cand: u128, adj: &[u128], cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() + cand.count_ones() as usize <= best.len() {
            return;
        }
        if cand == 0 {
            *best = cur.clone();
            return;
        }
        let x = cand.trailing_zeros() as usize;
        cur.push(x);
        expand(cand & adj[x], adj, cur, best);
        cur.pop();
        expand(cand & !(1u128 << x), adj, cur, best);
    }
    let mut best = vec![0];
    let mut cur = vec![0];
    expand(adj[0], &adj, &mut cur, &mut best);
    let a = Subset::from_indices(g, best)?;
    Ok((a.measure(), a))
}

/// The witness `chi_A * chi~_A / m_G(A)`: positive definite, `f(0) = 1`, supported in `A - A`.
pub fn autocorrelation_witness(a: &Subset) -> Result<GroupFunction> {
    let f = posdef::autocorrelation(a)?;
    Ok(f.scaled(1.0 / a.measure()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// For `H` tiling `G` strictly with `Lambda`: `C(H - H, Omega-) = m_G(H)`.
pub fn verify_tile_theorem(
    g: &Group,
    h: &Subset,
    lambda: &Subset,
    minus: &Subset,
) -> Result<TileReport> {
    if h.is_empty() || !density::tiles_strict(h, lambda)? {
        return Err(Error::NotAStrictTiling);
    }
    let h = h.with_group(g)?;
    let plus = crate::group::self_difference(&h);
    let lhs = two_set_constant(g, &plus, minus)?.value;
    let rhs = h.measure();
    Ok(TileReport {
        lhs,
        rhs,
        pass: (lhs - rhs).abs() <= VERIFY_TOL,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MainReport {
    pub delsarte: f64,
    /// `1 / D#(Lambda) = 1/#Lambda` on a probability-normalized group.
    pub bound: f64,
    pub tight: bool,
    pub pass: bool,
}

/// `D(Omega+) <= 1/D#(Lambda)` whenever `(Lambda - Lambda) ∩ Omega+ = {0}`.
pub fn verify_main_theorem(g: &Group, plus: &Subset, lambda: &Subset) -> Result<MainReport> {
    if !g.is_probability() {
        return invalid("the finite-group density bound needs the probability normalization");
    }
    if lambda.is_empty() {
        return invalid("Lambda must be nonempty");
    }
    if !density::packing_type(plus, lambda)? {
        return Err(Error::ConditionViolated(
            "(Lambda - Lambda) ∩ Omega+ contains a nonzero element".into(),
        ));
    }
    let d = delsarte(g, plus)?.value;
    let bound = 1.0 / density::auud_finite(g, lambda)?.to_integer() as f64;
    Ok(MainReport {
        delsarte: d,
        bound,
        tight: (d - bound).abs() <= VERIFY_TOL,
        pass: d <= bound + VERIFY_TOL,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomomorphismReport {
    pub group_constant: f64,
    pub quotient_constant: f64,
    pub subgroup_constant: f64,
    pub rhs: f64,
    pub pass: bool,
}

fn subgroup_members(g: &Group, k: &Subset) -> Result<Vec<usize>> {
    if !g.same_shape(k.group()) {
        return invalid("K lives in a different group");
    }
    let members = k.indices();
    if !k.contains(0)
        || members
            .iter()
            .any(|&x| members.iter().any(|&y| !k.contains(g.sub(x, y))))
    {
        return invalid("K is not a subgroup");
    }
    Ok(members)
}

/// `C_G(Omega+, Omega-) <= C_{G/K}(pi Omega+, pi Omega-) * C_K(Omega+ ∩ K, Omega- ∩ K)`,
/// all three groups carrying counting measure.
pub fn verify_homomorphism_bound(
    g: &Group,
    k: &Subset,
    plus: &Subset,
    minus: &Subset,
) -> Result<HomomorphismReport> {
    let counting = g.renormalized(crate::group::Normalization::Counting)?;
    let members = subgroup_members(g, k)?;
    let mut warnings = Vec::new();
    let p = prepare(g, plus, "omega_plus", &mut warnings)?;
    let m = prepare(g, minus, "omega_minus", &mut warnings)?;

    let group_constant = if p[0] {
        solve_arena(&Arena::of_group(&counting), &p, &m)?.value
    } else {
        0.0
    };

    let (quot, coset_of) = Arena::of_quotient(g, &members);
    let mut qp = vec![false; quot.size];
    let mut qm = vec![false; quot.size];
    for x in g.elements() {
        qp[coset_of[x]] |= p[x];
        qm[coset_of[x]] |= m[x];
    }
    let quotient_constant = solve_arena(&quot, &qp, &qm)?.value;

    let sub = Arena::of_subgroup(g, &members);
    let kp: Vec<bool> = members.iter().map(|&x| p[x]).collect();
    let km: Vec<bool> = members.iter().map(|&x| m[x]).collect();
    let subgroup_constant = solve_arena(&sub, &kp, &km)?.value;

    let rhs = quotient_constant * subgroup_constant;
    Ok(HomomorphismReport {
        group_constant,
        quotient_constant,
        subgroup_constant,
        rhs,
        pass: group_constant <= rhs + VERIFY_TOL * (1.0 + rhs.abs()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductReport {
    pub product_constant: f64,
    pub factor_constants: [f64; 2],
    pub rhs: f64,
    /// `rhs - product_constant`; recorded, never asserted to be zero or positive-strict.
    pub gap: f64,
    pub pass: bool,
}

fn product_set(g: &Group, a: &Subset, b: &Subset) -> Result<Subset> {
    let nb = b.group().size();
    Subset::from_indices(
        g,
        a.indices()
            .into_iter()
            .flat_map(|x| b.indices().into_iter().map(move |y| x * nb + y)),
    )
}

/// `C_{G1 x G2}(Omega1+ x Omega2+, Omega1- x Omega2-) <= C_{G1}(..) * C_{G2}(..)`.
pub fn verify_product_bound(
    g1: &Group,
    g2: &Group,
    plus: (&Subset, &Subset),
    minus: (&Subset, &Subset),
) -> Result<ProductReport> {
    let g = g1.product(g2);
    let c1 = two_set_constant(g1, plus.0, minus.0)?.value;
    let c2 = two_set_constant(g2, plus.1, minus.1)?.value;
    let pp = product_set(&g, plus.0, plus.1)?;
    let pm = product_set(&g, minus.0, minus.1)?;
    let c = two_set_constant(&g, &pp, &pm)?.value;
    let rhs = c1 * c2;
    Ok(ProductReport {
        product_constant: c,
        factor_constants: [c1, c2],
        rhs,
        gap: rhs - c,
        pass: c <= rhs + VERIFY_TOL * (1.0 + rhs.abs()),
    })
}

/// An automorphism of a finite abelian group as a permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    map: Vec<usize>,
}

impl Automorphism {
    /// Checks bijectivity and additivity; additivity is checked on `x + e_j`
    /// for every element `x` and every factor generator `e_j`.
    pub fn new(g: &Group, map: Vec<usize>) -> Result<Automorphism> {
        let n = g.size();
        if map.len() != n || map.iter().any(|&y| y >= n) {
            return invalid("automorphism must map every element into the group");
        }
        let mut hit = vec![false; n];
        for &y in &map {
            if std::mem::replace(&mut hit[y], true) {
                return invalid("map is not bijective");
            }
        }
        if map[0] != 0 {
            return invalid("map does not fix 0");
        }
        for j in 0..g.rank() {
            let mut e = vec![0i64; g.rank()];
            e[j] = 1;
            let ej = g.index(&e)?;
            for x in g.elements() {
                if map[g.add(x, ej)] != g.add(map[x], map[ej]) {
                    return invalid("map is not additive");
                }
            }
        }
        Ok(Automorphism { map })
    }

    pub fn identity(g: &Group) -> Automorphism {
        Automorphism {
            map: g.elements().collect(),
        }
    }

    /// `x -> m x` on a cyclic group.
    pub fn multiplier(g: &Group, m: i64) -> Result<Automorphism> {
        if g.rank() != 1 {
            return invalid("multiplier automorphisms need a cyclic group");
        }
        let map = g
            .elements()
            .map(|x| g.index(&[m * x as i64]))
            .collect::<Result<Vec<_>>>()?;
        Automorphism::new(g, map)
    }

    /// `x -> M x` for an integer matrix acting on coordinate vectors.
    pub fn from_matrix(g: &Group, matrix: &[Vec<i64>]) -> Result<Automorphism> {
        let k = g.rank();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return invalid("automorphism matrix must be square of size rank(G)");
        }
        let map = g
            .elements()
            .map(|x| {
                let c = g.coords(x);
                let y: Vec<i64> = matrix
                    .iter()
                    .map(|row| row.iter().zip(&c).map(|(a, &b)| a * b as i64).sum())
                    .collect();
                g.index(&y)
            })
            .collect::<Result<Vec<_>>>()?;
        Automorphism::new(g, map)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image(&self, set: &Subset) -> Result<Subset> {
        Subset::from_indices(set.group(), set.indices().into_iter().map(|x| self.map[x]))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AutomorphismReport {
    pub original: f64,
    pub image: f64,
    pub pass: bool,
}

/// `C(phi Omega+, phi Omega-) = C(Omega+, Omega-)`; a bijection of a finite group preserves Haar measure.
pub fn verify_automorphism_invariance(
    g: &Group,
    phi: &Automorphism,
    plus: &Subset,
    minus: &Subset,
) -> Result<AutomorphismReport> {
    let original = two_set_constant(g, plus, minus)?.value;
    let image = two_set_constant(g, &phi.image(plus)?, &phi.image(minus)?)?.value;
    Ok(AutomorphismReport {
        original,
        image,
        pass: (original - image).abs() <= VERIFY_TOL,
    })
}
