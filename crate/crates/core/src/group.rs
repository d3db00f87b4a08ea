//! Finite abelian groups `Z_{n1} x ... x Z_{nk}`, subsets, real functions on
//! them and the discrete Fourier transform.
//!
//! Elements are addressed by a flat index in lexicographic order of their
//! coordinate tuples (the last coordinate varies fastest). Characters use the
//! same indexing: character `k` is `x -> exp(2 pi i sum_j k_j x_j / n_j)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Haar measure normalization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Total mass one, i.e. weight `1/N` per point.
    Probability,
    /// Weight one per point.
    Counting,
    /// Explicit positive weight per point.
    Weight(f64),
}

/// Wire form of a [`Group`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub orders: Vec<usize>,
    pub normalization: Normalization,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupSpec", into = "GroupSpec")]
pub struct Group {
    orders: Vec<usize>,
    normalization: Normalization,
    weight: f64,
    strides: Vec<usize>,
    size: usize,
    lcm: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Group {
    pub fn new(orders: &[usize], normalization: Normalization) -> Result<Group> {
        if orders.is_empty() {
            return invalid("group needs at least one cyclic factor");
        }
        if let Some(pos) = orders.iter().position(|&n| n == 0) {
            return invalid(format!("cyclic factor {pos} has order 0"));
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| crate::Error::InvalidInput("group order overflows".into()))?;
        let weight = match normalization {
            Normalization::Probability => 1.0 / size as f64,
            Normalization::Counting => 1.0,
            Normalization::Weight(w) => {
                if !(w.is_finite() && w > 0.0) {
                    return invalid(format!("Haar weight must be positive and finite, got {w}"));
                }
                w
            }
        };
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        let lcm = orders.iter().fold(1usize, |l, &n| l / gcd(l, n) * n);
        Ok(Group {
            orders: orders.to_vec(),
            normalization,
            weight,
            strides,
            size,
            lcm,
        })
    }

    pub fn probability(orders: &[usize]) -> Result<Group> {
        Group::new(orders, Normalization::Probability)
    }

    pub fn counting(orders: &[usize]) -> Result<Group> {
        Group::new(orders, Normalization::Counting)
    }

    /// Same group with a different Haar normalization.
    pub fn renormalized(&self, normalization: Normalization) -> Result<Group> {
        Group::new(&self.orders, normalization)
    }

    /// Direct product; the product measure is the product of the factor measures.
    pub fn product(&self, other: &Group) -> Group {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        let normalization = match (self.normalization, other.normalization) {
            (Normalization::Probability, Normalization::Probability) => Normalization::Probability,
            (Normalization::Counting, Normalization::Counting) => Normalization::Counting,
            _ => Normalization::Weight(self.weight * other.weight),
        };
        Group::new(&orders, normalization).expect("product of valid groups is valid")
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Number of elements `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Haar mass of a single point.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// `m_G(G) = N * weight`.
    pub fn total_mass(&self) -> f64 {
        self.size as f64 * self.weight
    }

    pub fn is_probability(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= 1e-12
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Least common multiple of the factor orders; all character phases live in `Z_lcm`.
    pub fn exponent(&self) -> usize {
        self.lcm
    }

    pub fn same_shape(&self, other: &Group) -> bool {
        self.orders == other.orders
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        debug_assert!(index < self.size);
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (index / s) % n)
            .collect()
    }

    /// Flat index of a coordinate tuple; coordinates are reduced modulo the factor orders.
    pub fn index(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.orders.len() {
            return invalid(format!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.orders.len()
            ));
        }
        Ok(coords
            .iter()
            .zip(self.orders.iter().zip(&self.strides))
            .map(|(&c, (&n, &s))| (c.rem_euclid(n as i64) as usize) * s)
            .sum())
    }

    pub fn element(&self, index: usize) -> Element {
        Element(self.coords(index))
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, n| (x + y) % n)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, n| (x + n - y) % n)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }

    fn combine(&self, a: usize, b: usize, op: impl Fn(usize, usize, usize) -> usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let x = (a / s) % n;
            let y = (b / s) % n;
            out += op(x, y, n) * s;
        }
        out
    }

    /// Table `neg[x] = -x`.
    pub fn negation_table(&self) -> Vec<usize> {
        (0..self.size).map(|x| self.neg(x)).collect()
    }

    /// Phase of character `k` at `x` as an integer in `Z_lcm`, so that
    /// `chi_k(x) = exp(2 pi i phase / lcm)`.
    pub fn phase(&self, k: usize, x: usize) -> usize {
        let mut acc = 0usize;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let kj = (k / s) % n;
            let xj = (x / s) % n;
            acc = (acc + kj * xj % n * (self.lcm / n)) % self.lcm;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// Order of the element `x` in the group.
    pub fn element_order(&self, x: usize) -> usize {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| n / gcd(n, (x / s) % n))
            .fold(1, |l, o| l / gcd(l, o) * o)
    }
}

impl TryFrom<GroupSpec> for Group {
    type Error = crate::Error;
    fn try_from(spec: GroupSpec) -> Result<Group> {
        Group::new(&spec.orders, spec.normalization)
    }
}

impl From<Group> for GroupSpec {
    fn from(g: Group) -> GroupSpec {
        GroupSpec {
            orders: g.orders,
            normalization: g.normalization,
        }
    }
}

/// Coordinate tuple of a group element, each coordinate reduced.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(pub Vec<usize>);

/// A plain subset of a group.
#[derive(Clone, Debug, PartialEq)]
pub struct Subset {
    group: Group,
    mask: Vec<bool>,
}

impl Subset {
    pub fn empty(group: &Group) -> Subset {
        Subset {
            group: group.clone(),
            mask: vec![false; group.size()],
        }
    }

    pub fn full(group: &Group) -> Subset {
        Subset {
            group: group.clone(),
            mask: vec![true; group.size()],
        }
    }

    pub fn from_mask(group: &Group, mask: Vec<bool>) -> Result<Subset> {
        if mask.len() != group.size() {
            return invalid(format!(
                "mask length {} does not match group size {}",
                mask.len(),
                group.size()
            ));
        }
        Ok(Subset {
            group: group.clone(),
            mask,
        })
    }

    pub fn from_indices(group: &Group, indices: impl IntoIterator<Item = usize>) -> Result<Subset> {
        let mut mask = vec![false; group.size()];
        for i in indices {
            if i >= group.size() {
                return invalid(format!("element index {i} out of range"));
            }
            mask[i] = true;
        }
        Ok(Subset {
            group: group.clone(),
            mask,
        })
    }

    /// Builds a subset from coordinate tuples (reduced modulo the orders).
    pub fn from_coords(group: &Group, elems: &[Vec<i64>]) -> Result<Subset> {
        let idx = elems
            .iter()
            .map(|c| group.index(c))
            .collect::<Result<Vec<_>>>()?;
        Subset::from_indices(group, idx)
    }

    /// Subset of a cyclic group from residues, e.g. `[5, 0, 1]` or `[-1, 0, 1]`.
    pub fn from_residues(group: &Group, residues: &[i64]) -> Result<Subset> {
        if group.rank() != 1 {
            return invalid("residue lists are only accepted for cyclic groups");
        }
        let coords: Vec<Vec<i64>> = residues.iter().map(|&r| vec![r]).collect();
        Subset::from_coords(group, &coords)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    /// Haar measure `m_G(A) = weight * #A`.
    pub fn measure(&self) -> f64 {
        self.group.weight() * self.len() as f64
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.mask.len()).all(|x| self.mask[x] == self.mask[self.group.neg(x)])
    }

    pub fn negated(&self) -> Subset {
        let mut mask = vec![false; self.mask.len()];
        for x in self.indices() {
            mask[self.group.neg(x)] = true;
        }
        Subset {
            group: self.group.clone(),
            mask,
        }
    }

    fn check_same(&self, other: &Subset) -> Result<()> {
        if !self.group.same_shape(&other.group) {
            return invalid("sets live in different groups");
        }
        Ok(())
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a && b))
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a || b))
    }

    pub fn complement(&self) -> Subset {
        Subset {
            group: self.group.clone(),
            mask: self.mask.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.group.same_shape(&other.group)
            && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// The translate `A + t`.
    pub fn translate(&self, t: usize) -> Subset {
        let mut mask = vec![false; self.mask.len()];
        for x in self.indices() {
            mask[self.group.add(x, t)] = true;
        }
        Subset {
            group: self.group.clone(),
            mask,
        }
    }

    /// Sorted coordinate tuples.
    pub fn to_coords(&self) -> Vec<Element> {
        self.indices()
            .into_iter()
            .map(|i| self.group.element(i))
            .collect()
    }

    /// Same mask in a group of the same shape but different normalization.
    pub fn with_group(&self, group: &Group) -> Result<Subset> {
        if !self.group.same_shape(group) {
            return invalid("cannot move a set to a group of a different shape");
        }
        Ok(Subset {
            group: group.clone(),
            mask: self.mask.clone(),
        })
    }

    fn zip_with(&self, other: &Subset, op: impl Fn(bool, bool) -> bool) -> Subset {
        Subset {
            group: self.group.clone(),
            mask: self
                .mask
                .iter()
                .zip(&other.mask)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

/// A 0-symmetric subset (`x in S` iff `-x in S`).
#[derive(Clone, Debug, PartialEq)]
pub struct SymSet(Subset);

impl SymSet {
    /// Rejects non-symmetric input.
    pub fn new(set: Subset) -> Result<SymSet> {
        if !set.is_symmetric() {
            return invalid("set is not symmetric under x -> -x");
        }
        Ok(SymSet(set))
    }

    /// Intersects the set with its negation. The flag is true when elements were dropped.
    pub fn symmetrize(set: Subset) -> (SymSet, bool) {
        if set.is_symmetric() {
            return (SymSet(set), false);
        }
        let neg = set.negated();
        let sym = set.intersection(&neg).expect("same group");
        (SymSet(sym), true)
    }

    pub fn empty(group: &Group) -> SymSet {
        SymSet(Subset::empty(group))
    }

    pub fn full(group: &Group) -> SymSet {
        SymSet(Subset::full(group))
    }

    /// `{-r, ..., r}` in a cyclic group.
    pub fn interval(group: &Group, radius: usize) -> Result<SymSet> {
        let r = radius as i64;
        let residues: Vec<i64> = (-r..=r).collect();
        SymSet::new(Subset::from_residues(group, &residues)?)
    }

    pub fn as_subset(&self) -> &Subset {
        &self.0
    }

    pub fn into_subset(self) -> Subset {
        self.0
    }

    pub fn with_group(&self, group: &Group) -> Result<SymSet> {
        Ok(SymSet(self.0.with_group(group)?))
    }
}

impl std::ops::Deref for SymSet {
    type Target = Subset;
    fn deref(&self) -> &Subset {
        &self.0
    }
}

/// `A - B = {a - b : a in A, b in B}`.
pub fn difference_set(a: &Subset, b: &Subset) -> Result<Subset> {
    a.check_same(b)?;
    let g = a.group();
    let mut mask = vec![false; g.size()];
    let bs = b.indices();
    for x in a.indices() {
        for &y in &bs {
            mask[g.sub(x, y)] = true;
        }
    }
    Subset::from_mask(g, mask)
}

/// `H - H`, which is always symmetric.
pub fn self_difference(h: &Subset) -> SymSet {
    SymSet(difference_set(h, h).expect("same group"))
}

/// A real-valued function on a group, values in lexicographic element order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupFunction {
    group: Group,
    values: Vec<f64>,
}

impl GroupFunction {
    pub fn new(group: &Group, values: Vec<f64>) -> Result<GroupFunction> {
        if values.len() != group.size() {
            return invalid(format!(
                "function has {} values, group has {} elements",
                values.len(),
                group.size()
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return invalid("function values must be finite");
        }
        Ok(GroupFunction {
            group: group.clone(),
            values,
        })
    }

    pub fn from_fn(group: &Group, f: impl Fn(usize) -> f64) -> GroupFunction {
        GroupFunction {
            group: group.clone(),
            values: group.elements().map(f).collect(),
        }
    }

    pub fn zero(group: &Group) -> GroupFunction {
        GroupFunction::from_fn(group, |_| 0.0)
    }

    pub fn constant(group: &Group, c: f64) -> GroupFunction {
        GroupFunction::from_fn(group, |_| c)
    }

    pub fn delta(group: &Group, at: usize, value: f64) -> GroupFunction {
        GroupFunction::from_fn(group, |x| if x == at { value } else { 0.0 })
    }

    pub fn indicator(set: &Subset) -> GroupFunction {
        GroupFunction::from_fn(set.group(), |x| if set.contains(x) { 1.0 } else { 0.0 })
    }

    /// `Re chi_k`.
    pub fn character_real_part(group: &Group, k: usize) -> GroupFunction {
        let l = group.exponent() as f64;
        GroupFunction::from_fn(group, |x| (2.0 * PI * group.phase(k, x) as f64 / l).cos())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, x: usize) -> f64 {
        self.values[x]
    }

    pub fn at_zero(&self) -> f64 {
        self.values[0]
    }

    /// `int_G f dm_G = weight * sum_x f(x)`.
    pub fn integral(&self) -> f64 {
        self.group.weight() * self.values.iter().sum::<f64>()
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.group
            .elements()
            .all(|x| (self.values[x] - self.values[self.group.neg(x)]).abs() <= tol)
    }

    pub fn scaled(&self, c: f64) -> GroupFunction {
        GroupFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn dft(&self) -> Spectrum {
        dft(self)
    }
}

/// Fourier coefficients indexed by character, in the element indexing of the group.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    group: Group,
    values: Vec<Complex64>,
}

/// Largest imaginary residue tolerated when a spectrum is reported as real.
pub const REAL_RESIDUE_TOL: f64 = 1e-9;

impl Spectrum {
    pub fn new(group: &Group, values: Vec<Complex64>) -> Result<Spectrum> {
        if values.len() != group.size() {
            return invalid("spectrum length does not match group size");
        }
        Ok(Spectrum {
            group: group.clone(),
            values,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn min_real(&self) -> f64 {
        self.values
            .iter()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min)
    }

    /// Real parts, after checking that every imaginary residue is below [`REAL_RESIDUE_TOL`].
    pub fn real_values(&self) -> Result<Vec<f64>> {
        let res = self.max_imag();
        if res >= REAL_RESIDUE_TOL {
            return invalid(format!("spectrum is not real: imaginary residue {res:e}"));
        }
        Ok(self.values.iter().map(|z| z.re).collect())
    }

    /// Inverse transform `f(x) = 1/(N w) sum_chi F(chi) chi(x)`.
    pub fn inverse(&self) -> Vec<Complex64> {
        inverse_dft(&self.group, &self.values)
    }
}

fn unit_roots(l: usize, sign: f64) -> Vec<Complex64> {
    (0..l)
        .map(|m| Complex64::from_polar(1.0, sign * 2.0 * PI * m as f64 / l as f64))
        .collect()
}

fn phase_rows(group: &Group) -> Vec<Vec<usize>> {
    // phase(k, x) = sum_j k_j * (x_j * lcm / n_j) mod lcm
    let l = group.exponent();
    group
        .elements()
        .map(|x| {
            group
                .coords(x)
                .iter()
                .zip(group.orders())
                .map(|(&xj, &n)| xj * (l / n))
                .collect()
        })
        .collect()
}

fn transform(group: &Group, input: &[Complex64], sign: f64, scale: f64) -> Vec<Complex64> {
    let l = group.exponent();
    let roots = unit_roots(l, sign);
    let xs = phase_rows(group);
    let n = group.size();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, slot) in out.iter_mut().enumerate() {
        let kc = group.coords(k);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, v) in input.iter().enumerate() {
            if *v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ph = kc
                .iter()
                .zip(&xs[x])
                .fold(0usize, |a, (&kj, &xj)| (a + kj * xj) % l);
            acc += v * roots[ph];
        }
        *slot = acc * scale;
    }
    out
}

/// `F(chi) = w sum_x f(x) conj(chi(x))` for a complex-valued function.
pub fn dft_complex(group: &Group, values: &[Complex64]) -> Vec<Complex64> {
    transform(group, values, -1.0, group.weight())
}

/// Inverse of [`dft_complex`].
pub fn inverse_dft(group: &Group, spectrum: &[Complex64]) -> Vec<Complex64> {
    transform(group, spectrum, 1.0, 1.0 / group.total_mass())
}

pub fn dft(f: &GroupFunction) -> Spectrum {
    let input: Vec<Complex64> = f.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Spectrum {
        group: f.group.clone(),
        values: dft_complex(&f.group, &input),
    }
}
