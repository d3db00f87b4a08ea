//! Randomized verification suites. Every instance is drawn from a
//! [`SplitMix64`] stream seeded per suite, so a `(suite, seed, instances,
//! max_n)` tuple replays exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::density;
use crate::error::{Error, Result};
use crate::extremal::{self, Automorphism, VERIFY_TOL};
use crate::group::{Group, Normalization, Subset};
use crate::rng::SplitMix64;

/// Largest group used by the exhaustive lower-bound search in the bounds suite.
pub const BOUNDS_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Tile,
    Main,
    Hom,
    Product,
    Auto,
    Density,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Tile,
        Suite::Main,
        Suite::Hom,
        Suite::Product,
        Suite::Auto,
        Suite::Density,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tile => "tile",
            Suite::Main => "main",
            Suite::Hom => "hom",
            Suite::Product => "product",
            Suite::Auto => "auto",
            Suite::Density => "density",
            Suite::Bounds => "bounds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub instances: usize,
    pub seed: u64,
    pub max_n: usize,
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_n < 2 {
            return Err(Error::InvalidInput("max_n must be at least 2".into()));
        }
        if self.max_n > 128 {
            return Err(Error::InvalidInput("max_n is limited to 128".into()));
        }
        Ok(())
    }
}

/// One checked inequality `lhs <= rhs + tol` (or equality, when `equality` is set).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub index: usize,
    pub property: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    pub equality: bool,
    pub pass: bool,
}

impl Case {
    fn new(
        index: usize,
        property: &str,
        instance: &str,
        lhs: f64,
        rhs: f64,
        equality: bool,
    ) -> Case {
        let pass = if equality {
            (lhs - rhs).abs() <= VERIFY_TOL
        } else {
            lhs <= rhs + VERIFY_TOL
        };
        Case {
            index,
            property: property.into(),
            instance: instance.into(),
            lhs,
            rhs,
            equality,
            pass,
        }
    }

    /// How far the check is from failing in the wrong direction (positive means violated).
    pub fn violation(&self) -> f64 {
        if self.equality {
            (self.lhs - self.rhs).abs()
        } else {
            self.lhs - self.rhs
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub instances: usize,
    pub max_n: usize,
    pub checks: usize,
    pub violations: usize,
    pub max_violation: f64,
    /// Inequality checks that hold with equality to `1e-8`.
    pub tight: usize,
    pub cases: Vec<Case>,
    pub pass: bool,
}

impl SuiteReport {
    fn from_cases(suite: Suite, cfg: &FuzzConfig, cases: Vec<Case>) -> SuiteReport {
        let violations = cases.iter().filter(|c| !c.pass).count();
        let max_violation = cases
            .iter()
            .map(Case::violation)
            .fold(f64::NEG_INFINITY, f64::max);
        let tight = cases
            .iter()
            .filter(|c| !c.equality && (c.lhs - c.rhs).abs() <= VERIFY_TOL)
            .count();
        SuiteReport {
            suite,
            seed: cfg.seed,
            instances: cfg.instances,
            max_n: cfg.max_n,
            checks: cases.len(),
            violations,
            max_violation: if cases.is_empty() { 0.0 } else { max_violation },
            tight,
            pass: violations == 0,
            cases,
        }
    }
}

// per-suite stream so suites do not shift each other when run together
fn stream(suite: Suite, seed: u64) -> SplitMix64 {
    let salt = Suite::ALL.iter().position(|&s| s == suite).unwrap() as u64;
    let mut mix = SplitMix64::new(seed ^ salt.wrapping_mul(0xd1b5_4a32_d192_ed03));
    SplitMix64::new(mix.next_u64())
}

fn residues(s: &Subset) -> Vec<usize> {
    s.indices()
}

fn describe_cyclic(n: usize, parts: &[(&str, &Subset)]) -> String {
    let mut out = format!("Z_{n}");
    for (name, s) in parts {
        out.push_str(&format!(" {name}={:?}", residues(s)));
    }
    out
}

/// Random symmetric subset: each orbit `{x, -x}` with probability `p`.
fn random_sym(rng: &mut SplitMix64, g: &Group, p: f64, with_zero: Option<bool>) -> Result<Subset> {
    let mut mask = vec![false; g.size()];
    for x in g.elements() {
        let nx = g.neg(x);
        if nx < x {
            continue;
        }
        let take = if x == 0 {
            with_zero.unwrap_or_else(|| rng.bernoulli(p))
        } else {
            rng.bernoulli(p)
        };
        mask[x] = take;
        mask[nx] = take;
    }
    Subset::from_mask(g, mask)
}

fn random_sym_in(
    rng: &mut SplitMix64,
    g: &Group,
    range: (f64, f64),
    with_zero: Option<bool>,
) -> Result<Subset> {
    let p = rng.uniform(range.0, range.1);
    random_sym(rng, g, p, with_zero)
}

fn random_subset(rng: &mut SplitMix64, g: &Group, p: f64, with_zero: bool) -> Result<Subset> {
    let mut mask: Vec<bool> = (0..g.size()).map(|_| rng.bernoulli(p)).collect();
    if with_zero {
        mask[0] = true;
    }
    if !mask.iter().any(|&b| b) {
        mask[rng.below(g.size())] = true;
    }
    Subset::from_mask(g, mask)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A complete residue system mod `k` in `Z_n` (random lifts), which tiles with `k Z_n`.
fn random_tile(rng: &mut SplitMix64, g: &Group, n: usize, k: usize) -> Result<(Subset, Subset)> {
    let reps = n / k;
    let h = Subset::from_indices(g, (0..k).map(|j| (j + k * rng.below(reps)) % n))?;
    let lambda = Subset::from_indices(g, (0..n).step_by(k))?;
    Ok((h, lambda))
}

pub fn run_suite(suite: Suite, cfg: &FuzzConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut rng = stream(suite, cfg.seed);
    let mut cases = Vec::new();
    for i in 0..cfg.instances {
        match suite {
            Suite::Tile => tile_case(&mut rng, cfg, i, &mut cases)?,
            Suite::Main => main_case(&mut rng, cfg, i, &mut cases)?,
            Suite::Hom => hom_case(&mut rng, cfg, i, &mut cases)?,
            Suite::Product => product_case(&mut rng, cfg, i, &mut cases)?,
            Suite::Auto => auto_case(&mut rng, cfg, i, &mut cases)?,
            Suite::Density => density_case(&mut rng, cfg, i, &mut cases)?,
            Suite::Bounds => bounds_case(&mut rng, cfg, i, &mut cases)?,
        }
    }
    Ok(SuiteReport::from_cases(suite, cfg, cases))
}

fn tile_case(rng: &mut SplitMix64, cfg: &FuzzConfig, i: usize, out: &mut Vec<Case>) -> Result<()> {
    let n = rng.range(2, cfg.max_n);
    let g = Group::probability(&[n])?;
    let ds = divisors(n);
    let k = ds[rng.below(ds.len())];
    let (h, lambda) = random_tile(rng, &g, n, k)?;
    let minus = match rng.below(3) {
        0 => Subset::empty(&g),
        1 => Subset::full(&g),
        _ => random_sym(rng, &g, 0.5, None)?,
    };
    let r = extremal::verify_tile_theorem(&g, &h, &lambda, &minus)?;
    let desc = describe_cyclic(n, &[("H", &h), ("Lambda", &lambda), ("minus", &minus)]);
    out.push(Case::new(
        i,
        "C(H-H, minus) = m(H)",
        &desc,
        r.lhs,
        r.rhs,
        true,
    ));
    Ok(())
}

fn main_case(rng: &mut SplitMix64, cfg: &FuzzConfig, i: usize, out: &mut Vec<Case>) -> Result<()> {
    let n = rng.range(2, cfg.max_n);
    let g = Group::probability(&[n])?;
    let (plus, lambda) = if i.is_multiple_of(4) {
        // a tiling instance, where the bound is attained
        let ds = divisors(n);
        let k = ds[rng.below(ds.len())];
        let h = Subset::from_indices(&g, 0..k)?;
        let lambda = Subset::from_indices(&g, (0..n).step_by(k))?;
        (crate::group::self_difference(&h).into_subset(), lambda)
    } else {
        let lambda = {
            let p = rng.uniform(0.05, 0.4);
            random_subset(rng, &g, p, true)?
        };
        let forbidden = crate::group::difference_set(&lambda, &lambda)?;
        let candidate = random_sym_in(rng, &g, (0.2, 0.9), Some(true))?;
        let mask: Vec<bool> = g
            .elements()
            .map(|x| candidate.contains(x) && (x == 0 || !forbidden.contains(x)))
            .collect();
        (Subset::from_mask(&g, mask)?, lambda)
    };
    let r = extremal::verify_main_theorem(&g, &plus, &lambda)?;
    let desc = describe_cyclic(n, &[("plus", &plus), ("Lambda", &lambda)]);
    out.push(Case::new(
        i,
        "D(plus) <= 1/#Lambda",
        &desc,
        r.delsarte,
        r.bound,
        false,
    ));
    Ok(())
}

fn hom_case(rng: &mut SplitMix64, cfg: &FuzzConfig, i: usize, out: &mut Vec<Case>) -> Result<()> {
    let (g, k) = if rng.below(3) < 2 {
        let n = rng.range(2, cfg.max_n);
        let g = Group::counting(&[n])?;
        let ds = divisors(n);
        let d = ds[rng.below(ds.len())];
        let k = Subset::from_indices(&g, (0..n).step_by(d))?;
        (g, k)
    } else {
        let a = rng.range(2, 4.min(cfg.max_n / 2).max(2));
        let b = rng.range(2, (cfg.max_n / a).max(2));
        let g = Group::counting(&[a, b])?;
        let da = divisors(a);
        let db = divisors(b);
        let (sa, sb) = (da[rng.below(da.len())], db[rng.below(db.len())]);
        let k = Subset::from_mask(
            &g,
            g.elements()
                .map(|x| {
                    let c = g.coords(x);
                    c[0] % sa == 0 && c[1] % sb == 0
                })
                .collect(),
        )?;
        (g, k)
    };
    let plus = random_sym_in(rng, &g, (0.2, 0.8), Some(true))?;
    let minus = {
        let p = rng.uniform(0.0, 0.8);
        random_sym(rng, &g, p, None)?
    };
    let r = extremal::verify_homomorphism_bound(&g, &k, &plus, &minus)?;
    let desc = format!(
        "G={:?} K={:?} plus={:?} minus={:?}",
        g.orders(),
        residues(&k),
        residues(&plus),
        residues(&minus)
    );
    out.push(Case::new(
        i,
        "C_G <= C_{G/K} * C_K",
        &desc,
        r.group_constant,
        r.rhs,
        false,
    ));
    Ok(())
}

fn product_case(
    rng: &mut SplitMix64,
    cfg: &FuzzConfig,
    i: usize,
    out: &mut Vec<Case>,
) -> Result<()> {
    let cap = cfg.max_n.clamp(4, 36);
    let a = rng.range(2, 6.min(cap / 2));
    let b = rng.range(2, (cap / a).clamp(2, 6));
    let g1 = Group::probability(&[a])?;
    let g2 = Group::probability(&[b])?;
    let p1 = random_sym(rng, &g1, 0.5, Some(true))?;
    let p2 = random_sym(rng, &g2, 0.5, Some(true))?;
    let m1 = random_sym(rng, &g1, 0.5, None)?;
    let m2 = random_sym(rng, &g2, 0.5, None)?;
    let r = extremal::verify_product_bound(&g1, &g2, (&p1, &p2), (&m1, &m2))?;
    let desc = format!(
        "Z_{a} x Z_{b} plus=({:?},{:?}) minus=({:?},{:?})",
        residues(&p1),
        residues(&p2),
        residues(&m1),
        residues(&m2)
    );
    out.push(Case::new(
        i,
        "C_G1xG2 <= C_G1 * C_G2",
        &desc,
        r.product_constant,
        r.rhs,
        false,
    ));
    Ok(())
}

fn auto_case(rng: &mut SplitMix64, cfg: &FuzzConfig, i: usize, out: &mut Vec<Case>) -> Result<()> {
    let n = rng.range(2, cfg.max_n);
    let g = Group::probability(&[n])?;
    let units: Vec<usize> = (1..n.max(2)).filter(|&m| gcd(m, n) == 1).collect();
    let m = units[rng.below(units.len())];
    let phi = Automorphism::multiplier(&g, m as i64)?;
    let plus = random_sym_in(rng, &g, (0.2, 0.8), Some(true))?;
    let minus = {
        let p = rng.uniform(0.0, 0.8);
        random_sym(rng, &g, p, None)?
    };
    let r = extremal::verify_automorphism_invariance(&g, &phi, &plus, &minus)?;
    let desc = format!(
        "{} phi=x*{m}",
        describe_cyclic(n, &[("plus", &plus), ("minus", &minus)])
    );
    out.push(Case::new(
        i,
        "C(phi plus, phi minus) = C(plus, minus)",
        &desc,
        r.image,
        r.original,
        true,
    ));
    Ok(())
}

fn density_case(
    rng: &mut SplitMix64,
    cfg: &FuzzConfig,
    i: usize,
    out: &mut Vec<Case>,
) -> Result<()> {
    let n = rng.range(2, cfg.max_n);
    let g = Group::probability(&[n])?;
    let (h, lambda) = if i.is_multiple_of(3) {
        let ds = divisors(n);
        let k = ds[rng.below(ds.len())];
        random_tile(rng, &g, n, k)?
    } else {
        (
            {
                let p = rng.uniform(0.05, 0.5);
                random_subset(rng, &g, p, false)?
            },
            {
                let p = rng.uniform(0.05, 0.5);
                random_subset(rng, &g, p, false)?
            },
        )
    };
    let r = density::density_bounds_check(&g, &h, &lambda)?;
    let desc = format!(
        "{} relation={:?}",
        describe_cyclic(n, &[("H", &h), ("Lambda", &lambda)]),
        r.relation
    );
    let (lhs, rhs) = (ratio_f64(r.auud), ratio_f64(r.inverse_measure));
    let case = match r.relation {
        density::DensityRelation::Equal => {
            Case::new(i, "D#(Lambda) = 1/m(H)", &desc, lhs, rhs, true)
        }
        density::DensityRelation::AtMost => {
            Case::new(i, "D#(Lambda) <= 1/m(H)", &desc, lhs, rhs, false)
        }
        density::DensityRelation::AtLeast => {
            Case::new(i, "1/m(H) <= D#(Lambda)", &desc, rhs, lhs, false)
        }
        density::DensityRelation::None => return Ok(()),
    };
    // the exact rational verdict is authoritative
    out.push(Case {
        pass: r.pass,
        ..case
    });
    Ok(())
}

fn ratio_f64(r: density::Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn bounds_case(
    rng: &mut SplitMix64,
    cfg: &FuzzConfig,
    i: usize,
    out: &mut Vec<Case>,
) -> Result<()> {
    let n = rng.range(2, cfg.max_n.min(BOUNDS_MAX_N));
    let g = Group::probability(&[n])?;
    let plus = random_sym_in(rng, &g, (0.1, 0.7), Some(true))?;
    let minus = {
        let p = rng.uniform(0.0, 0.7);
        random_sym(rng, &g, p, None)?
    };
    let plus2 = plus.union(&random_sym(rng, &g, 0.3, None)?)?;
    let minus2 = minus.union(&random_sym(rng, &g, 0.3, None)?)?;
    let desc = describe_cyclic(
        n,
        &[
            ("plus", &plus),
            ("minus", &minus),
            ("plus'", &plus2),
            ("minus'", &minus2),
        ],
    );

    let small = extremal::two_set_constant(&g, &plus, &minus)?.value;
    let big = extremal::two_set_constant(&g, &plus2, &minus2)?.value;
    out.push(Case::new(i, "monotonicity", &desc, small, big, false));

    let t = extremal::turan(&g, &plus)?.value;
    let d = extremal::delsarte(&g, &plus)?.value;
    out.push(Case::new(i, "T <= D", &desc, t, d, false));

    out.push(Case::new(
        i,
        "C <= m(plus)",
        &desc,
        small,
        plus.measure(),
        false,
    ));

    let (lower, _) = extremal::difference_subset_lower_bound(&g, &plus)?;
    out.push(Case::new(
        i,
        "max m(A), A-A in plus <= C(plus, empty)",
        &desc,
        lower,
        t.min(extremal::two_set_constant(&g, &plus, &Subset::empty(&g))?.value),
        false,
    ));

    let c = 0.5 + rng.next_f64() * 3.0;
    let weighted = Group::new(&[n], Normalization::Weight(c / n as f64))?;
    let scaled = extremal::two_set_constant(
        &weighted,
        &plus.with_group(&weighted)?,
        &minus.with_group(&weighted)?,
    )?
    .value;
    out.push(Case::new(
        i,
        "weight scaling",
        &desc,
        scaled,
        c * small,
        true,
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_replay() {
        let cfg = FuzzConfig {
            instances: 6,
            seed: 11,
            max_n: 12,
        };
        for s in Suite::ALL {
            let a = run_suite(s, &cfg).unwrap();
            let b = run_suite(s, &cfg).unwrap();
            assert_eq!(a, b);
            assert!(a.pass, "{s}: {a:?}");
        }
    }

    #[test]
    fn main_suite_has_tight_instances() {
        let r = run_suite(
            Suite::Main,
            &FuzzConfig {
                instances: 8,
                seed: 3,
                max_n: 20,
            },
        )
        .unwrap();
        assert!(r.tight >= 1);
    }

    #[test]
    fn parse_names() {
        assert_eq!("hom".parse::<Suite>().unwrap(), Suite::Hom);
        assert!("nope".parse::<Suite>().is_err());
    }
}
