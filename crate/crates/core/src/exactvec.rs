//! Exact vectors on unordered pairs (`R^E`) and ordered pairs (`R^{E^O}`) of
//! points, and the split form of the subspace `Q_n` of weighted quasi-metrics.
//!
//! Coordinates are stored densely in lexicographic order: pairs `(i,j)` with
//! `i < j`, arcs `(i,j)` with `i != j`. For pair vectors on `V ∪ {0}` the pairs
//! `(0,i)` therefore come first.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::{linalg, Error, IntVec, Rational, Result};

/// A subset of `V = {1..n}`, point `i` stored in bit `i - 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PointSet(u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);
    /// Largest ground set a `PointSet` can address.
    pub const MAX_POINTS: usize = 16;

    pub fn from_bits(bits: u32) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= Self::MAX_POINTS);
        PointSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        let mut s = PointSet::EMPTY;
        for p in points {
            s.insert(p);
        }
        s
    }

    pub fn insert(&mut self, point: usize) {
        debug_assert!((1..=Self::MAX_POINTS).contains(&point));
        self.0 |= 1 << (point - 1);
    }

    pub fn contains(self, point: usize) -> bool {
        (1..=Self::MAX_POINTS).contains(&point) && self.0 & (1 << (point - 1)) != 0
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & Self::full(n).0)
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        PointSet(self.0 ^ other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Points of the set in increasing order.
    pub fn points(self) -> impl Iterator<Item = usize> {
        (1..=Self::MAX_POINTS).filter(move |&p| self.contains(p))
    }

    /// All `2^n` subsets of `{1..n}`, ordered by bit pattern.
    pub fn all(n: usize) -> impl Iterator<Item = PointSet> {
        assert!(n <= Self::MAX_POINTS, "at most {} points", Self::MAX_POINTS);
        (0u32..(1u32 << n)).map(PointSet)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.points().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn pair_count(points: usize) -> usize {
    points * points.saturating_sub(1) / 2
}

/// Position of the internal pair `a < b` among `points` points.
pub(crate) fn pair_position(points: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < points);
    a * points - a * (a + 1) / 2 + (b - a - 1)
}

/// Position of the internal arc `a -> b` among `points` points.
pub(crate) fn arc_position(points: usize, a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < points && b < points);
    a * (points - 1) + if b < a { b } else { b - 1 }
}

fn ratio(num: i64) -> Rational {
    Rational::from_integer(num.into())
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Vector in `R^E`, indexed by unordered pairs of points.
///
/// The ground set is `{1..n}`, or `{0..n}` when the vector lives on
/// `V ∪ {0}` (see [`PairVector::zeros_extended`]).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PairVector {
    n: usize,
    with_zero: bool,
    coords: Vec<Rational>,
}

impl PairVector {
    /// Zero vector on `V = {1..n}`.
    pub fn zeros(n: usize) -> Self {
        PairVector {
            n,
            with_zero: false,
            coords: vec![Rational::zero(); pair_count(n)],
        }
    }

    /// Zero vector on `V ∪ {0}`.
    pub fn zeros_extended(n: usize) -> Self {
        PairVector {
            n,
            with_zero: true,
            coords: vec![Rational::zero(); pair_count(n + 1)],
        }
    }

    pub fn from_coords(n: usize, with_zero: bool, coords: Vec<Rational>) -> Result<Self> {
        let expected = pair_count(n + with_zero as usize);
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coords.len(),
            });
        }
        Ok(PairVector {
            n,
            with_zero,
            coords,
        })
    }

    pub fn from_ints(n: usize, with_zero: bool, coords: &[crate::BigInt]) -> Result<Self> {
        Self::from_coords(
            n,
            with_zero,
            coords
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Unit vector `e_(ij)`.
    pub fn unit(n: usize, with_zero: bool, i: usize, j: usize) -> Self {
        let mut v = if with_zero {
            Self::zeros_extended(n)
        } else {
            Self::zeros(n)
        };
        v.set(i, j, Rational::one());
        v
    }

    /// `|V|`, not counting the point 0.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_zero_point(&self) -> bool {
        self.with_zero
    }

    pub fn point_count(&self) -> usize {
        self.n + self.with_zero as usize
    }

    pub fn first_label(&self) -> usize {
        if self.with_zero {
            0
        } else {
            1
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    fn internal(&self, label: usize) -> usize {
        let first = self.first_label();
        assert!(
            label >= first && label <= self.n,
            "point {label} out of range"
        );
        label - first
    }

    /// Coordinate position of the pair `(ij)`; order of `i, j` is irrelevant.
    pub fn position(&self, i: usize, j: usize) -> usize {
        assert_ne!(i, j, "pair needs two distinct points");
        let (a, b) = (self.internal(i.min(j)), self.internal(i.max(j)));
        pair_position(self.point_count(), a, b)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.coords[self.position(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        let p = self.position(i, j);
        self.coords[p] = value;
    }

    /// Labelled pairs `(i, j)`, `i < j`, in coordinate order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        pair_labels(self.n, self.with_zero)
    }

    pub fn dot(&self, other: &PairVector) -> Rational {
        self.assert_same_shape(other);
        dot(&self.coords, &other.coords)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        PairVector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Restriction `x^V` to the pairs inside `V`.
    pub fn restrict_to_v(&self) -> PairVector {
        if !self.with_zero {
            return self.clone();
        }
        let mut out = PairVector::zeros(self.n);
        for (i, j) in out.pairs() {
            out.set(i, j, self.get(i, j).clone());
        }
        out
    }

    /// The coordinates `x_(0i)`, `i = 1..n`. Empty for vectors on `V`.
    pub fn zero_part(&self) -> Vec<Rational> {
        if !self.with_zero {
            return Vec::new();
        }
        (1..=self.n).map(|i| self.get(0, i).clone()).collect()
    }

    /// Zero-lifting: the same vector on `V ∪ {0}` with `x_(0i) = 0`.
    pub fn zero_lift(&self) -> PairVector {
        assert!(!self.with_zero, "already on V ∪ {{0}}");
        let mut out = PairVector::zeros_extended(self.n);
        for (i, j) in self.pairs() {
            out.set(i, j, self.get(i, j).clone());
        }
        out
    }

    /// Primitive integer multiple (positive scaling) of this vector.
    pub fn to_primitive(&self) -> IntVec {
        linalg::primitive_from_rationals(&self.coords)
    }

    fn assert_same_shape(&self, other: &PairVector) {
        assert!(
            self.n == other.n && self.with_zero == other.with_zero,
            "pair vectors on different ground sets"
        );
    }
}

/// Labelled pairs in coordinate order.
pub fn pair_labels(n: usize, with_zero: bool) -> Vec<(usize, usize)> {
    let first = if with_zero { 0 } else { 1 };
    let mut out = Vec::with_capacity(pair_count(n + with_zero as usize));
    for i in first..=n {
        for j in (i + 1)..=n {
            out.push((i, j));
        }
    }
    out
}

/// Labelled arcs in coordinate order.
pub fn arc_labels(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

/// Vector in `R^{E^O}`, indexed by ordered pairs (arcs) of `V = {1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ArcVector {
    n: usize,
    coords: Vec<Rational>,
}

impl ArcVector {
    pub fn zeros(n: usize) -> Self {
        ArcVector {
            n,
            coords: vec![Rational::zero(); n * n.saturating_sub(1)],
        }
    }

    pub fn from_coords(n: usize, coords: Vec<Rational>) -> Result<Self> {
        let expected = n * n.saturating_sub(1);
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coords.len(),
            });
        }
        Ok(ArcVector { n, coords })
    }

    pub fn from_ints(n: usize, coords: &[crate::BigInt]) -> Result<Self> {
        Self::from_coords(
            n,
            coords
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Unit vector `e_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut v = Self::zeros(n);
        v.set(i, j, Rational::one());
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn position(&self, i: usize, j: usize) -> usize {
        assert!(
            i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "bad arc {i}{j}"
        );
        arc_position(self.n, i - 1, j - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.coords[self.position(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        let p = self.position(i, j);
        self.coords[p] = value;
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        arc_labels(self.n)
    }

    pub fn dot(&self, other: &ArcVector) -> Rational {
        assert_eq!(self.n, other.n, "arc vectors on different ground sets");
        dot(&self.coords, &other.coords)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        ArcVector {
            n: self.n,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `g*` with `(g*)_ij = g_ji`.
    pub fn transpose(&self) -> ArcVector {
        let mut out = ArcVector::zeros(self.n);
        for (i, j) in self.arcs() {
            out.set(i, j, self.get(j, i).clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs()
            .into_iter()
            .all(|(i, j)| i > j || self.get(i, j) == self.get(j, i))
    }

    pub fn to_primitive(&self) -> IntVec {
        linalg::primitive_from_rationals(&self.coords)
    }
}

macro_rules! linear_ops {
    ($ty:ident, $check:expr) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $check(self, rhs);
                let coords = self
                    .coords
                    .iter()
                    .zip(&rhs.coords)
                    .map(|(a, b)| a + b)
                    .collect();
                $ty {
                    coords,
                    ..self.clone()
                }
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $check(self, rhs);
                let coords = self
                    .coords
                    .iter()
                    .zip(&rhs.coords)
                    .map(|(a, b)| a - b)
                    .collect();
                $ty {
                    coords,
                    ..self.clone()
                }
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    coords: self.coords.iter().map(|c| -c).collect(),
                    ..self.clone()
                }
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

linear_ops!(PairVector, |a: &PairVector, b: &PairVector| a
    .assert_same_shape(b));
linear_ops!(ArcVector, |a: &ArcVector, b: &ArcVector| assert_eq!(
    a.n, b.n,
    "arc vectors on different ground sets"
));

/// Element of `Q_n` in split form: `q_ij = q_(ij) + w_i - w_j`.
///
/// [`QnVector::new`] shifts the weights so that they sum to zero; weights
/// are only defined up to an additive constant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QnVector {
    sym: PairVector,
    weights: Vec<Rational>,
}

impl QnVector {
    pub fn new(sym: PairVector, weights: Vec<Rational>) -> Result<Self> {
        let mut v = Self::from_raw_parts(sym, weights)?;
        let n = v.weights.len();
        if n > 0 {
            let mean = v.weights.iter().fold(Rational::zero(), |a, w| a + w) / ratio(n as i64);
            for w in &mut v.weights {
                *w -= &mean;
            }
        }
        Ok(v)
    }

    /// Builds the vector without the gauge shift.
    pub fn from_raw_parts(sym: PairVector, weights: Vec<Rational>) -> Result<Self> {
        if sym.has_zero_point() {
            return Err(Error::DimensionMismatch {
                expected: pair_count(sym.n()),
                found: sym.len(),
            });
        }
        if weights.len() != sym.n() {
            return Err(Error::DimensionMismatch {
                expected: sym.n(),
                found: weights.len(),
            });
        }
        Ok(QnVector { sym, weights })
    }

    pub fn zeros(n: usize) -> Self {
        QnVector {
            sym: PairVector::zeros(n),
            weights: vec![Rational::zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.sym.n()
    }

    pub fn sym(&self) -> &PairVector {
        &self.sym
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_sum(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, w| a + w)
    }

    pub fn is_gauged(&self) -> bool {
        self.weight_sum().is_zero()
    }

    /// Arc coordinates `q_ij = q_(ij) + w_i - w_j`.
    pub fn expand(&self) -> ArcVector {
        let n = self.n();
        let mut out = ArcVector::zeros(n);
        for (i, j) in out.arcs() {
            let v = self.sym.get(i, j) + &self.weights[i - 1] - &self.weights[j - 1];
            out.set(i, j, v);
        }
        out
    }

    /// `q* = q^s - q^a`: same symmetric part, negated weights.
    pub fn transpose(&self) -> QnVector {
        QnVector {
            sym: self.sym.clone(),
            weights: self.weights.iter().map(|w| -w).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let first = self.weights.first();
        self.weights.iter().all(|w| Some(w) == first)
    }

    pub fn is_zero(&self) -> bool {
        self.sym.is_zero() && self.is_symmetric()
    }

    pub fn scaled(&self, factor: &Rational) -> QnVector {
        QnVector {
            sym: self.sym.scaled(factor),
            weights: self.weights.iter().map(|w| w * factor).collect(),
        }
    }

    /// Primitive integer form of `(q_(ij) ..., n·w_1, ..., n·w_n)` under
    /// positive scaling; the representation used for facet vectors.
    pub fn normalized(&self) -> IntVec {
        let n = ratio(self.n() as i64);
        let mut coords: Vec<Rational> = self.sym.coords().to_vec();
        coords.extend(self.weights.iter().map(|w| w * &n));
        linalg::primitive_from_rationals(&coords)
    }

    /// Inverse of [`QnVector::normalized`] up to positive scaling.
    pub fn from_normalized(n: usize, coords: &[crate::BigInt]) -> Result<QnVector> {
        let np = pair_count(n);
        if coords.len() != np + n {
            return Err(Error::DimensionMismatch {
                expected: np + n,
                found: coords.len(),
            });
        }
        let sym = PairVector::from_ints(n, false, &coords[..np])?;
        let nr = ratio(n as i64);
        let weights = coords[np..]
            .iter()
            .map(|c| Rational::from_integer(c.clone()) / &nr)
            .collect();
        QnVector::new(sym, weights)
    }
}

impl Add for &QnVector {
    type Output = QnVector;
    fn add(self, rhs: &QnVector) -> QnVector {
        QnVector {
            sym: &self.sym + &rhs.sym,
            weights: self
                .weights
                .iter()
                .zip(&rhs.weights)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QnVector {
    type Output = QnVector;
    fn sub(self, rhs: &QnVector) -> QnVector {
        QnVector {
            sym: &self.sym - &rhs.sym,
            weights: self
                .weights
                .iter()
                .zip(&rhs.weights)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `g*`, `(g*)_ij = g_ji`.
pub fn transpose(g: &ArcVector) -> ArcVector {
    g.transpose()
}

/// Symmetric and antisymmetric parts `g^s = (g + g*)/2`, `g^a = (g - g*)/2`.
pub fn split(g: &ArcVector) -> (ArcVector, ArcVector) {
    let t = g.transpose();
    let half = Rational::new(1.into(), 2.into());
    ((g + &t).scaled(&half), (g - &t).scaled(&half))
}

/// `φ(d)` with `φ(d)_ij = φ(d)_ji = d_(ij)`.
pub fn phi(d: &PairVector) -> Result<ArcVector> {
    if d.has_zero_point() {
        return Err(Error::DimensionMismatch {
            expected: pair_count(d.n()),
            found: d.len(),
        });
    }
    let mut out = ArcVector::zeros(d.n());
    for (i, j) in out.arcs() {
        out.set(i, j, d.get(i, j).clone());
    }
    Ok(out)
}

pub fn phi_inverse(g: &ArcVector) -> Result<PairVector> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut out = PairVector::zeros(g.n());
    for (i, j) in out.pairs() {
        out.set(i, j, g.get(i, j).clone());
    }
    Ok(out)
}

/// The potential vector `q(k)`: `+1` on arcs `kj`, `-1` on arcs `jk`.
pub fn weight_basis(k: usize, n: usize) -> Result<ArcVector> {
    if !(1..=n).contains(&k) {
        return Err(Error::PointOutOfRange { point: k, n });
    }
    let mut out = ArcVector::zeros(n);
    for j in (1..=n).filter(|&j| j != k) {
        out.set(k, j, ratio(1));
        out.set(j, k, ratio(-1));
    }
    Ok(out)
}

/// Splits `g = expand(canon) + residual` with `canon ∈ Q_n` and the residual
/// in the circuit space `Q_n^c` (orthogonal to `Q_n`).
pub fn project_to_qn(g: &ArcVector) -> (QnVector, ArcVector) {
    let n = g.n();
    let half = Rational::new(1.into(), 2.into());
    let mut sym = PairVector::zeros(n);
    for (i, j) in sym.pairs() {
        sym.set(i, j, (g.get(i, j) + g.get(j, i)) * &half);
    }
    let nr = ratio(n as i64);
    let weights: Vec<Rational> = (1..=n)
        .map(|i| {
            let s = (1..=n)
                .filter(|&j| j != i)
                .fold(Rational::zero(), |acc, j| {
                    acc + (g.get(i, j) - g.get(j, i)) * &half
                });
            s / &nr
        })
        .collect();
    let canon = QnVector::new(sym, weights).expect("shapes agree");
    let residual = g - &canon.expand();
    (canon, residual)
}

/// `Σ g_(ij) q_(ij) + n Σ v_i w_i`, half the arc-space product of the
/// expansions. Both weight vectors must sum to zero.
pub fn qn_inner(g: &QnVector, q: &QnVector) -> Result<Rational> {
    for v in [g, q] {
        let s = v.weight_sum();
        if !s.is_zero() {
            return Err(Error::Gauge(alloc::format!("{s}")));
        }
    }
    if g.n() != q.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: q.n(),
        });
    }
    let n = ratio(g.n() as i64);
    Ok(g.sym.dot(&q.sym) + dot(&g.weights, &q.weights) * n)
}

/// Bicircuit vector `f^{T(ijk)} = (e_ij + e_jk + e_ki) - (e_ji + e_kj + e_ik)`.
pub fn bitriangle(i: usize, j: usize, k: usize, n: usize) -> ArcVector {
    bicircuit(&[i, j, k], n).expect("bitriangle on distinct points")
}

/// Characteristic vector `f^C` of the bicircuit through `cycle` (in order).
pub fn bicircuit(cycle: &[usize], n: usize) -> Result<ArcVector> {
    let p = cycle.len();
    if p < 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: p,
        });
    }
    for (a, &x) in cycle.iter().enumerate() {
        if !(1..=n).contains(&x) {
            return Err(Error::PointOutOfRange { point: x, n });
        }
        if cycle[..a].contains(&x) {
            return Err(Error::PointOutOfRange { point: x, n });
        }
    }
    let mut out = ArcVector::zeros(n);
    for a in 0..p {
        let (x, y) = (cycle[a], cycle[(a + 1) % p]);
        out.set(x, y, ratio(1));
        out.set(y, x, ratio(-1));
    }
    Ok(out)
}

/// The fundamental bitriangles `f^{T(1ij)}`, `2 <= i < j <= n`; their
/// orthogonal complement is `Q_n`.
pub fn qn_equalities(n: usize) -> Vec<ArcVector> {
    let mut out = Vec::new();
    for i in 2..=n {
        for j in (i + 1)..=n {
            out.push(bitriangle(1, i, j, n));
        }
    }
    out
}

/// Whether `g` satisfies every fundamental bitriangle equality.
pub fn is_in_qn(g: &ArcVector) -> bool {
    qn_equalities(g.n()).iter().all(|f| f.dot(g).is_zero())
}
