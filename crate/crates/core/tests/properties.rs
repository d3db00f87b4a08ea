use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;

use delsarte::density::{self, max_density_search};
use delsarte::extremal::{self, difference_subset_lower_bound};
use delsarte::group::{
    dft_complex, difference_set, inverse_dft, Group, GroupFunction, Normalization, Subset,
};
use delsarte::lp::{self, LpProblem, LpStatus, RowSense};
use delsarte::posdef;

fn orders() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=6, 1..=3)
}

fn normalization() -> impl Strategy<Value = Normalization> {
    prop_oneof![
        Just(Normalization::Probability),
        Just(Normalization::Counting),
        (0.1f64..3.0).prop_map(Normalization::Weight),
    ]
}

fn group() -> impl Strategy<Value = Group> {
    (orders(), normalization()).prop_map(|(o, n)| Group::new(&o, n).unwrap())
}

fn function_on(g: Group) -> impl Strategy<Value = GroupFunction> {
    let n = g.size();
    prop::collection::vec(-2.0f64..2.0, n).prop_map(move |v| GroupFunction::new(&g, v).unwrap())
}

fn symmetric(f: &GroupFunction) -> GroupFunction {
    let g = f.group();
    GroupFunction::from_fn(g, |x| 0.5 * (f.at(x) + f.at(g.neg(x))))
}

fn subset_of(g: Group) -> impl Strategy<Value = Subset> {
    let n = g.size();
    prop::collection::vec(any::<bool>(), n).prop_map(move |m| Subset::from_mask(&g, m).unwrap())
}

// smallest eigenvalue of [f(x - y)] under counting measure
fn min_eigenvalue(f: &GroupFunction) -> f64 {
    let g = f.group();
    let n = g.size();
    let m = DMatrix::from_fn(n, n, |x, y| f.at(g.sub(x, y)) * g.weight());
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn posdef_matches_eigenvalues(f in (1usize..=16).prop_flat_map(|n| {
        function_on(Group::counting(&[n]).unwrap())
    })) {
        let f = symmetric(&f);
        prop_assert_eq!(posdef::is_posdef(&f, 1e-9), min_eigenvalue(&f) >= -1e-9);
    }
}

// 1e-9 plus rounding relative to the largest Fourier coefficient; exact zeros
// of large spectra come out as -1e-8 and below
fn scaled_tol(f: &GroupFunction) -> f64 {
    let peak = f
        .dft()
        .values()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    1e-9 + 1e-13 * peak
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parseval(f in group().prop_flat_map(function_on)) {
        let g = f.group();
        let w = g.weight();
        let lhs = w * f.values().iter().map(|v| v * v).sum::<f64>();
        let spec = f.dft();
        let rhs = spec.values().iter().map(|z| z.norm_sqr()).sum::<f64>() / (g.size() as f64 * w);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1e-300));
    }

    #[test]
    fn dft_inverts(
        (g, re, im) in group().prop_flat_map(|g| {
            let n = g.size();
            (Just(g), prop::collection::vec(-1.0f64..1.0, n), prop::collection::vec(-1.0f64..1.0, n))
        })
    ) {
        let spec: Vec<Complex64> = re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let back = dft_complex(&g, &inverse_dft(&g, &spec));
        for (a, b) in back.iter().zip(&spec) {
            prop_assert!((a - b).norm() <= 1e-12);
        }
    }

    #[test]
    fn symmetric_functions_have_real_spectrum(f in group().prop_flat_map(function_on)) {
        let s = symmetric(&f).dft();
        prop_assert!(s.max_imag() <= 1e-12);
    }

    #[test]
    fn difference_sets_are_symmetric(h in group().prop_flat_map(subset_of)) {
        prop_assume!(!h.is_empty());
        let d = difference_set(&h, &h).unwrap();
        prop_assert!(d.contains(0));
        prop_assert!(d.is_symmetric());
    }

    #[test]
    fn posdef_functions_peak_at_zero(
        (f, a) in group().prop_flat_map(|g| (function_on(g.clone()), subset_of(g)))
    ) {
        // f * f~ and autocorrelations are positive definite
        prop_assume!(!a.is_empty());
        let g = f.group();
        let conv = GroupFunction::from_fn(g, |x| {
            g.elements().map(|y| f.at(y) * f.at(g.sub(y, x))).sum::<f64>() * g.weight()
        });
        let ac = posdef::autocorrelation(&a).unwrap();
        prop_assert!(posdef::is_posdef(&ac, 1e-12));
        for h in [&conv, &ac] {
            prop_assert!(posdef::is_posdef(h, 1e-9));
            prop_assert!(h.max() <= h.at_zero() + 1e-9);
        }
        let prod = posdef::schur_product(&conv, &ac).unwrap();
        prop_assert!(posdef::is_posdef(&prod, scaled_tol(&prod)));
    }

    #[test]
    fn periodize_preserves_posdef(
        (a, lambda) in group().prop_flat_map(|g| (subset_of(g.clone()), subset_of(g)))
    ) {
        prop_assume!(!a.is_empty() && !lambda.is_empty());
        let f = posdef::autocorrelation(&a).unwrap();
        let phi = posdef::periodize(&f, &lambda).unwrap();
        prop_assert!(posdef::is_posdef(&phi, scaled_tol(&phi)));
        let k = lambda.len() as f64;
        let want = k * k * f.integral();
        prop_assert!((phi.integral() - want).abs() <= 1e-10 * want.abs());
    }
}

fn lp_instance(
    vars: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (LpProblem, Vec<f64>)> {
    (vars, 1usize..=6).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(-3.0f64..3.0, n),
            prop::collection::vec(prop::collection::vec(-3.0f64..3.0, n), m),
            prop::collection::vec(0usize..3, m),
            prop::collection::vec(0.0f64..1.0, m),
            prop::collection::vec((-2.0f64..0.0, 0.5f64..3.0, any::<bool>()), n),
            prop::collection::vec(0.0f64..1.0, n),
        )
            .prop_map(move |(c, rows, senses, slack, bounds, t)| {
                // rows are built around a known interior point so the problem is feasible
                let x0: Vec<f64> = bounds
                    .iter()
                    .zip(&t)
                    .map(|(&(l, u, _), &t)| l + t * (u - l))
                    .collect();
                let mut p = LpProblem::new(c);
                for (i, &(l, u, free)) in bounds.iter().enumerate() {
                    if free {
                        // free variable, boxed by explicit rows instead
                        p.set_bounds(i, f64::NEG_INFINITY, f64::INFINITY);
                        let mut e = vec![0.0; n];
                        e[i] = 1.0;
                        p.add_row(e.clone(), RowSense::Ge, l);
                        p.add_row(e, RowSense::Le, u);
                    } else {
                        p.set_bounds(i, l, u);
                    }
                }
                for ((row, s), e) in rows.into_iter().zip(senses).zip(slack) {
                    let ax: f64 = row.iter().zip(&x0).map(|(a, v)| a * v).sum();
                    let (sense, rhs) = match s {
                        0 => (RowSense::Le, ax + e),
                        1 => (RowSense::Ge, ax - e),
                        _ => (RowSense::Eq, ax),
                    };
                    p.add_row(row, sense, rhs);
                }
                (p, x0)
            })
    })
}

// all vertices of a 2-variable problem with finite bounds
fn vertex_oracle(p: &LpProblem) -> Option<f64> {
    let mut lines: Vec<([f64; 2], f64)> = p
        .rows
        .iter()
        .zip(&p.rhs)
        .map(|(r, &b)| ([r[0], r[1]], b))
        .collect();
    for i in 0..2 {
        let mut e = [0.0; 2];
        e[i] = 1.0;
        for b in [p.lower[i], p.upper[i]] {
            if b.is_finite() {
                lines.push((e, b));
            }
        }
    }
    let mut best: Option<f64> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let ([a, b], e) = lines[i];
            let ([c, d], f) = lines[j];
            let det = a * d - b * c;
            if det.abs() < 1e-9 {
                continue;
            }
            let x = [(e * d - b * f) / det, (a * f - e * c) / det];
            if p.max_violation(&x) <= 1e-7 {
                let v = p.objective_at(&x);
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lp_strong_duality_and_feasibility((p, x0) in lp_instance(1..=5)) {
        let s = lp::solve(&p).unwrap();
        prop_assert_eq!(s.status, LpStatus::Optimal);
        prop_assert!(s.objective_value >= p.objective_at(&x0) - 1e-8);
        prop_assert!(p.max_violation(&s.x) <= 1e-9, "violation {}", p.max_violation(&s.x));
        prop_assert!(s.duality_gap() <= 1e-8 * (1.0 + s.objective_value.abs()));
        prop_assert_eq!(lp::solve(&p).unwrap(), s);
    }

    #[test]
    fn lp_matches_vertex_enumeration((p, _) in lp_instance(2..=2)) {
        let s = lp::solve(&p).unwrap();
        let want = vertex_oracle(&p).unwrap();
        prop_assert!((s.objective_value - want).abs() <= 1e-7 * (1.0 + want.abs()));
    }
}

fn cyclic_sets() -> impl Strategy<Value = (Group, Subset, Subset)> {
    (2usize..=12)
        .prop_map(|n| Group::probability(&[n]).unwrap())
        .prop_flat_map(|g| (Just(g.clone()), subset_of(g.clone()), subset_of(g)))
        .prop_map(|(g, a, b)| {
            // 0 belongs to Omega+ so the class is nonempty
            let mut m = a.mask().to_vec();
            m[0] = true;
            (g.clone(), Subset::from_mask(&g, m).unwrap(), b)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn constant_is_monotone((g, plus, minus) in cyclic_sets(), extra in any::<u64>()) {
        let n = g.size();
        let grow = |s: &Subset, bits: u64| {
            let mask = s.mask().iter().enumerate().map(|(i, &b)| b || (bits >> i) & 1 == 1).collect();
            Subset::from_mask(&g, mask).unwrap()
        };
        let plus2 = grow(&plus, extra);
        let minus2 = grow(&minus, extra >> n);
        let small = extremal::two_set_constant(&g, &plus, &minus).unwrap().value;
        let big = extremal::two_set_constant(&g, &plus2, &minus2).unwrap().value;
        prop_assert!(small <= big + 1e-9);
    }

    #[test]
    fn constant_bounds((g, plus, minus) in cyclic_sets()) {
        let c = extremal::two_set_constant(&g, &plus, &minus).unwrap().value;
        let t = extremal::turan(&g, &plus).unwrap().value;
        let d = extremal::delsarte(&g, &plus).unwrap().value;
        prop_assert!(t <= d + 1e-9);
        let sym = plus.intersection(&plus.negated()).unwrap();
        prop_assert!(c <= sym.measure() + 1e-9);
        let (lower, _) = difference_subset_lower_bound(&g, &plus).unwrap();
        prop_assert!(lower <= c + 1e-9);
    }

    #[test]
    fn measure_covariance((g, plus, minus) in cyclic_sets(), scale in 0.1f64..10.0) {
        let base = extremal::two_set_constant(&g, &plus, &minus).unwrap().value;
        let h = g.renormalized(Normalization::Weight(g.weight() * scale)).unwrap();
        let p2 = plus.with_group(&h).unwrap();
        let m2 = minus.with_group(&h).unwrap();
        let scaled = extremal::two_set_constant(&h, &p2, &m2).unwrap().value;
        prop_assert!((scaled - scale * base).abs() <= 1e-9 * (1.0 + scale * base.abs()));
    }

    #[test]
    fn packing_is_cover_count_at_most_one((h, lambda) in group().prop_flat_map(|g| (subset_of(g.clone()), subset_of(g)))) {
        prop_assume!(!h.is_empty() && !lambda.is_empty());
        let counts = density::cover_counts(&h, &lambda).unwrap();
        prop_assert_eq!(density::packs_strict(&h, &lambda).unwrap(), counts.iter().all(|&c| c <= 1));
        if density::tiles_strict(&h, &lambda).unwrap() {
            prop_assert_eq!(h.len() * lambda.len(), h.group().size());
        }
    }

    #[test]
    fn density_search_is_monotone(forbidden in prop::collection::btree_set(1u64..12, 0..5), extra in 1u64..12) {
        let small: Vec<u64> = forbidden.iter().copied().collect();
        let mut big = small.clone();
        big.push(extra);
        let a = max_density_search(&small, 12).unwrap().density;
        let b = max_density_search(&big, 12).unwrap().density;
        prop_assert!(b <= a);
    }
}
