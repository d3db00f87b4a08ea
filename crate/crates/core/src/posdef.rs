//! Positive definiteness on finite abelian groups and the standard
//! constructions that preserve it.
//!
//! On a finite group `f` is positive definite iff its Fourier transform is
//! nonnegative, so every decision here goes through [`crate::group::dft`].

use crate::error::{invalid, Result};
use crate::group::{GroupFunction, Subset};

/// Default tolerance for positive definiteness decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// True iff `min_chi Re f^(chi) >= -tol`.
pub fn is_posdef(f: &GroupFunction, tol: f64) -> bool {
    min_spectrum(f) >= -tol
}

/// Smallest real part of the Fourier transform.
pub fn min_spectrum(f: &GroupFunction) -> f64 {
    f.dft().min_real()
}

/// `f = chi_A * chi~_A`, i.e. `f(x) = w * #(A ∩ (A + x))`.
pub fn autocorrelation(a: &Subset) -> Result<GroupFunction> {
    if a.is_empty() {
        return invalid("autocorrelation of the empty set");
    }
    let g = a.group();
    let members = a.indices();
    let mut counts = vec![0usize; g.size()];
    // y in A and y - x in A  <=>  y - (y - x) = x is a difference
    for &y in &members {
        for &z in &members {
            counts[g.sub(y, z)] += 1;
        }
    }
    let w = g.weight();
    GroupFunction::new(g, counts.into_iter().map(|c| w * c as f64).collect())
}

/// Pointwise product.
pub fn schur_product(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    if !f.group().same_shape(g.group()) {
        return invalid("schur product of functions on different groups");
    }
    GroupFunction::new(
        f.group(),
        f.values()
            .iter()
            .zip(g.values())
            .map(|(a, b)| a * b)
            .collect(),
    )
}

/// `Phi(x) = sum_{l, l' in Lambda} f(x + l - l')`.
pub fn periodize(f: &GroupFunction, lambda: &Subset) -> Result<GroupFunction> {
    if lambda.is_empty() {
        return invalid("periodization over an empty translation set");
    }
    let g = f.group();
    if !g.same_shape(lambda.group()) {
        return invalid("translation set lives in a different group");
    }
    let pts = lambda.indices();
    // multiplicity of each difference l - l'
    let mut mult = vec![0usize; g.size()];
    for &l in &pts {
        for &m in &pts {
            mult[g.sub(l, m)] += 1;
        }
    }
    let diffs: Vec<(usize, f64)> = mult
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(d, &c)| (d, c as f64))
        .collect();
    Ok(GroupFunction::from_fn(g, |x| {
        diffs.iter().map(|&(d, c)| c * f.at(g.add(x, d))).sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    #[test]
    fn is_posdef_examples() {
        let z4 = Group::counting(&[4]).unwrap();
        let f = GroupFunction::new(&z4, vec![1.0, 0.0, -1.0, 0.0]).unwrap();
        assert!(is_posdef(&f, DEFAULT_TOL));
        let f = GroupFunction::new(&z4, vec![1.0, -1.0, 1.0, -1.0]).unwrap();
        assert!(is_posdef(&f, DEFAULT_TOL));
        let spec = f.dft().real_values().unwrap();
        assert!((spec[2] - 4.0).abs() < 1e-12);
        assert!(spec[0].abs() < 1e-12 && spec[1].abs() < 1e-12 && spec[3].abs() < 1e-12);
        let z3 = Group::counting(&[3]).unwrap();
        let f = GroupFunction::new(&z3, vec![1.0, -1.0, -1.0]).unwrap();
        assert!(!is_posdef(&f, DEFAULT_TOL));
        assert!((f.dft().values()[0].re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn autocorrelation_examples() {
        let z4 = Group::counting(&[4]).unwrap();
        let a = Subset::from_residues(&z4, &[0, 1]).unwrap();
        assert_eq!(autocorrelation(&a).unwrap().values(), &[2.0, 1.0, 0.0, 1.0]);

        let z6 = Group::probability(&[6]).unwrap();
        let a = Subset::from_residues(&z6, &[0, 3]).unwrap();
        let f = autocorrelation(&a).unwrap();
        for (x, v) in f.values().iter().enumerate() {
            let want = if x == 0 || x == 3 { 2.0 / 6.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-15);
        }
        let single = autocorrelation(&Subset::from_residues(&z6, &[0]).unwrap()).unwrap();
        assert_eq!(single, GroupFunction::delta(&z6, 0, 1.0 / 6.0));
        assert!(autocorrelation(&Subset::empty(&z6)).is_err());
    }

    #[test]
    fn autocorrelation_mass_identity() {
        let g = Group::new(&[3, 4], crate::group::Normalization::Weight(0.3)).unwrap();
        let a = Subset::from_indices(&g, [0, 1, 5, 7, 11]).unwrap();
        let f = autocorrelation(&a).unwrap();
        assert!((f.at_zero() - 0.3 * 5.0).abs() < 1e-12);
        assert!((f.integral() - (0.3 * 5.0f64).powi(2)).abs() < 1e-12);
        assert!(is_posdef(&f, 1e-12));
    }

    #[test]
    fn schur_examples() {
        let z8 = Group::counting(&[8]).unwrap();
        let c1 = GroupFunction::character_real_part(&z8, 1);
        let c3 = GroupFunction::character_real_part(&z8, 3);
        let p = schur_product(&c1, &c3).unwrap();
        assert!(is_posdef(&p, 1e-9));
        let one = GroupFunction::constant(&z8, 1.0);
        assert_eq!(schur_product(&c3, &one).unwrap(), c3);
        let z4 = GroupFunction::constant(&Group::counting(&[4]).unwrap(), 1.0);
        assert!(schur_product(&c1, &z4).is_err());
    }

    #[test]
    fn periodize_examples() {
        let z6 = Group::counting(&[6]).unwrap();
        let f = GroupFunction::delta(&z6, 0, 1.0);
        let single = Subset::from_residues(&z6, &[0]).unwrap();
        assert_eq!(periodize(&f, &single).unwrap(), f);

        let lam = Subset::from_residues(&z6, &[0, 3]).unwrap();
        let phi = periodize(&f, &lam).unwrap();
        assert_eq!(phi.values(), &[2.0, 0.0, 0.0, 2.0, 0.0, 0.0]);

        // f(0) = 1, f nonpositive on +-2: Phi(0) = 3 f(0) + 6 f(2) <= 3
        let f = GroupFunction::new(&z6, vec![1.0, 0.3, -0.25, 0.1, -0.25, 0.3]).unwrap();
        let lam = Subset::from_residues(&z6, &[0, 2, 4]).unwrap();
        let phi = periodize(&f, &lam).unwrap();
        let direct = 3.0 * f.at(0) + 3.0 * f.at(2) + 3.0 * f.at(4);
        assert!((phi.at(0) - direct).abs() < 1e-14);
        assert!(phi.at(0) <= 3.0);
        assert!(periodize(&f, &Subset::empty(&z6)).is_err());
    }
}
