//! Generator vectors (cuts, ocuts, weight cuts, hypermetric vectors) and the
//! definitional representations of the cone families.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::exactvec::{self, arc_labels, pair_labels, ArcVector, PairVector, PointSet, QnVector};
use crate::polyhedra::{Ambient, Cone};
use crate::{BigInt, Error, IntVec, Rational, Result};

fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn check_set(s: PointSet, n: usize) -> Result<()> {
    match s.points().find(|&p| p > n) {
        Some(point) => Err(Error::PointOutOfRange { point, n }),
        None => Ok(()),
    }
}

/// `δ(S)` on `V ∪ {0}` (`with_zero`) or `δ^V(S)` on `V`. Point 0 is never in `S`.
pub fn cut_vector(s: PointSet, n: usize, with_zero: bool) -> Result<PairVector> {
    check_set(s, n)?;
    let inside = |p: usize| p > 0 && s.contains(p);
    let coords = pair_labels(n, with_zero)
        .into_iter()
        .map(|(i, j)| rat((inside(i) != inside(j)) as i64))
        .collect();
    PairVector::from_coords(n, with_zero, coords)
}

/// `c(S)`: 1 on arcs leaving `S`.
pub fn ocut_vector(s: PointSet, n: usize) -> Result<ArcVector> {
    check_set(s, n)?;
    let coords = arc_labels(n)
        .into_iter()
        .map(|(i, j)| rat((s.contains(i) && !s.contains(j)) as i64))
        .collect();
    ArcVector::from_coords(n, coords)
}

/// `δ^O(S) = φ(δ^V(S))`.
pub fn sym_cut_vector(s: PointSet, n: usize) -> Result<ArcVector> {
    exactvec::phi(&cut_vector(s, n, false)?)
}

/// `q(S) = Σ_{k∈S} q(k)`.
pub fn weight_cut_vector(s: PointSet, n: usize) -> Result<ArcVector> {
    check_set(s, n)?;
    let mut out = ArcVector::zeros(n);
    for k in s.points() {
        out = &out + &exactvec::weight_basis(k, n)?;
    }
    Ok(out)
}

fn check_hyp_type(b: &[i64]) -> Result<()> {
    let sum: i64 = b.iter().sum();
    if sum == 0 || sum == 1 {
        Ok(())
    } else {
        Err(Error::NotHypermetricType(sum))
    }
}

/// `f(b)` with `f(b)_(ij) = -b_i b_j`. With `with_zero`, `b = (b_0, b_1..b_n)`
/// lives on `V ∪ {0}`; otherwise `b = (b_1..b_n)`.
pub fn hypermetric_vector(b: &[i64], with_zero: bool) -> Result<PairVector> {
    check_hyp_type(b)?;
    let n = b.len() - with_zero as usize;
    let at = |p: usize| b[p - !with_zero as usize];
    let coords = pair_labels(n, with_zero)
        .into_iter()
        .map(|(i, j)| rat(-at(i) * at(j)))
        .collect();
    PairVector::from_coords(n, with_zero, coords)
}

/// `b^S`: signs flipped on `S ⊆ V`, which must satisfy `Σ_{i∈S} b_i = 0`.
pub fn switch_b(b: &[i64], s: PointSet, with_zero: bool) -> Result<Vec<i64>> {
    let n = b.len() - with_zero as usize;
    check_set(s, n)?;
    let idx = |p: usize| p - !with_zero as usize;
    if s.points().map(|p| b[idx(p)]).sum::<i64>() != 0 {
        return Err(Error::NotBalanced);
    }
    let mut out = b.to_vec();
    for p in s.points() {
        out[idx(p)] = -out[idx(p)];
    }
    Ok(out)
}

/// Clique-web vector on `p` positive nodes (in cycle order) and `q` negative
/// nodes, `p - q = 2r + 1`: `f_uv = -b_u b_v`, plus 1 when `u, v` are
/// positive at cyclic distance at most `r` (the antiweb). Node `u` is then
/// merged into point `blocks[u]`; points are `0..m` on `{0} ∪ V`, and each
/// point must receive nodes of one sign.
pub fn clique_web_vector(p: usize, q: usize, blocks: &[usize]) -> Result<PairVector> {
    if p <= q || (p - q).is_multiple_of(2) || blocks.len() != p + q {
        return Err(Error::Inconsistent);
    }
    let r = (p - q - 1) / 2;
    let m = blocks.iter().max().map_or(0, |&b| b + 1);
    if m < 2 {
        return Err(Error::Inconsistent);
    }
    let mut sign = alloc::vec![None; m];
    for (u, &b) in blocks.iter().enumerate() {
        if *sign[b].get_or_insert(u < p) != (u < p) {
            return Err(Error::Inconsistent);
        }
    }
    if sign.contains(&None) {
        return Err(Error::Inconsistent);
    }
    let mut v = PairVector::zeros_extended(m - 1);
    for u in 0..p + q {
        for w in u + 1..p + q {
            let (a, b) = (blocks[u], blocks[w]);
            if a == b {
                continue;
            }
            let bu: i64 = if u < p { 1 } else { -1 };
            let bw: i64 = if w < p { 1 } else { -1 };
            let gap = w - u;
            let web = w < p && gap.min(p - gap) <= r;
            let x = v.get(a.min(b), a.max(b)) + rat(-bu * bw + web as i64);
            v.set(a.min(b), a.max(b), x);
        }
    }
    Ok(v)
}

/// Triangle vector `e_(ik) + e_(kj) - e_(ij)` (the inequality `d_(ij) <= d_(ik) + d_(kj)`).
pub fn triangle_vector(i: usize, j: usize, k: usize, n: usize, with_zero: bool) -> PairVector {
    let mut v = if with_zero {
        PairVector::zeros_extended(n)
    } else {
        PairVector::zeros(n)
    };
    v.set(i, k, rat(1));
    v.set(k, j, rat(1));
    v.set(i, j, rat(-1));
    v
}

/// Arc triangle vector `t_ijk = e_ij + e_jk - e_ik`.
pub fn arc_triangle(i: usize, j: usize, k: usize, n: usize) -> ArcVector {
    let mut v = ArcVector::zeros(n);
    v.set(i, j, rat(1));
    v.set(j, k, rat(1));
    v.set(i, k, rat(-1));
    v
}

/// A single generator or inequality vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Cut {
        set: PointSet,
        with_zero: bool,
    },
    Ocut {
        set: PointSet,
    },
    SymCut {
        set: PointSet,
    },
    WeightCut {
        set: PointSet,
    },
    Hypermetric {
        b: Vec<i64>,
        with_zero: bool,
    },
    /// `d_(ik) + d_(kj) - d_(ij) >= 0`.
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        with_zero: bool,
    },
    /// `q_ij >= 0`.
    Nonneg {
        i: usize,
        j: usize,
    },
}

/// Either kind of vector a [`GeneratorSpec`] produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Pair(PairVector),
    Arc(ArcVector),
}

impl Generator {
    pub fn coords(&self) -> &[Rational] {
        match self {
            Generator::Pair(v) => v.coords(),
            Generator::Arc(v) => v.coords(),
        }
    }
}

impl GeneratorSpec {
    /// Builds the vector on `n` points of `V` (plus 0 where applicable).
    pub fn build(&self, n: usize) -> Result<Generator> {
        let point = |p: usize, zero_ok: bool| {
            if p <= n && (p > 0 || zero_ok) {
                Ok(())
            } else {
                Err(Error::PointOutOfRange { point: p, n })
            }
        };
        Ok(match self {
            GeneratorSpec::Cut { set, with_zero } => {
                Generator::Pair(cut_vector(*set, n, *with_zero)?)
            }
            GeneratorSpec::Ocut { set } => Generator::Arc(ocut_vector(*set, n)?),
            GeneratorSpec::SymCut { set } => Generator::Arc(sym_cut_vector(*set, n)?),
            GeneratorSpec::WeightCut { set } => Generator::Arc(weight_cut_vector(*set, n)?),
            GeneratorSpec::Hypermetric { b, with_zero } => {
                let expected = n + *with_zero as usize;
                if b.len() != expected {
                    return Err(Error::DimensionMismatch {
                        expected,
                        found: b.len(),
                    });
                }
                Generator::Pair(hypermetric_vector(b, *with_zero)?)
            }
            GeneratorSpec::Triangle { i, j, k, with_zero } => {
                for p in [*i, *j, *k] {
                    point(p, *with_zero)?;
                }
                if i == j || j == k || i == k {
                    return Err(Error::PointOutOfRange { point: *k, n });
                }
                Generator::Pair(triangle_vector(*i, *j, *k, n, *with_zero))
            }
            GeneratorSpec::Nonneg { i, j } => {
                point(*i, false)?;
                point(*j, false)?;
                if i == j {
                    return Err(Error::PointOutOfRange { point: *j, n });
                }
                Generator::Arc(ArcVector::unit(n, *i, *j))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Met,
    QMet,
    WMet,
    DWMet,
    UWMet,
    Hyp,
    Cut,
    CutSym,
    OCut,
    WQMet,
    WQHyp,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Met,
        Family::QMet,
        Family::WMet,
        Family::DWMet,
        Family::UWMet,
        Family::Hyp,
        Family::Cut,
        Family::CutSym,
        Family::OCut,
        Family::WQMet,
        Family::WQHyp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Met => "met",
            Family::QMet => "qmet",
            Family::WMet => "wmet",
            Family::DWMet => "dwmet",
            Family::UWMet => "uwmet",
            Family::Hyp => "hyp",
            Family::Cut => "cut",
            Family::CutSym => "cut-sym",
            Family::OCut => "ocut",
            Family::WQMet => "wqmet",
            Family::WQHyp => "wqhyp",
        }
    }

    /// Whether `n` counts all points including 0 (`Met_n`, `Hyp_n`, `Cut_n`)
    /// rather than `|V|`.
    pub fn counts_zero_point(self) -> bool {
        matches!(self, Family::Met | Family::Hyp | Family::Cut)
    }

    pub fn ambient(self, n: usize) -> Ambient {
        match self {
            Family::Met | Family::Hyp | Family::Cut => Ambient::Pairs {
                n: n - 1,
                with_zero: true,
            },
            Family::WMet | Family::DWMet | Family::UWMet => Ambient::Pairs { n, with_zero: true },
            Family::QMet | Family::CutSym | Family::OCut | Family::WQMet | Family::WQHyp => {
                Ambient::Arcs { n }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name().replace('-', "") == key)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConeId {
    pub family: Family,
    pub n: usize,
    /// Bound `B` on `|b_i|` for the hypermetric families.
    pub bound: Option<i64>,
}

impl ConeId {
    pub fn new(family: Family, n: usize) -> ConeId {
        ConeId {
            family,
            n,
            bound: None,
        }
    }

    /// `B` actually used: explicit, else 1 up to 5 points and 2 beyond.
    pub fn hyp_bound(&self) -> i64 {
        let points = if self.family == Family::WQHyp {
            self.n + 1
        } else {
            self.n
        };
        self.bound.unwrap_or(if points <= 5 { 1 } else { 2 })
    }

    pub fn ambient(&self) -> Ambient {
        self.family.ambient(self.n)
    }
}

impl fmt::Display for ConeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.n)?;
        if matches!(self.family, Family::Hyp | Family::WQHyp) {
            write!(f, "[B={}]", self.hyp_bound())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildLimits {
    /// Largest allowed point count (`n` as given in the [`ConeId`]).
    pub max_points: usize,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits { max_points: 8 }
    }
}

impl BuildLimits {
    pub const HARD_MAX: usize = PointSet::MAX_POINTS;
}

fn pv_row(v: &PairVector) -> IntVec {
    v.to_primitive()
}

fn av_row(v: &ArcVector) -> IntVec {
    v.to_primitive()
}

fn metric_triangles(n: usize, with_zero: bool, include_zero: bool) -> Vec<IntVec> {
    let first = if include_zero { 0 } else { 1 };
    let mut rows = Vec::new();
    for a in first..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                // Each of the three points in turn on the long side.
                for (i, j, k) in [(a, b, c), (a, c, b), (b, c, a)] {
                    rows.push(pv_row(&triangle_vector(i, j, k, n, with_zero)));
                }
            }
        }
    }
    rows
}

/// `d_(ij) + d_(j0) - d_(i0) >= 0` and the mirror, for `i < j` in `V`.
fn rows_ij(n: usize) -> Vec<IntVec> {
    let mut rows = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            rows.push(pv_row(&triangle_vector(i, 0, j, n, true)));
            rows.push(pv_row(&triangle_vector(j, 0, i, n, true)));
        }
    }
    rows
}

/// `d_(i0) + d_(j0) - d_(ij) >= 0`.
fn rows_ij0(n: usize) -> Vec<IntVec> {
    let mut rows = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            rows.push(pv_row(&triangle_vector(i, j, 0, n, true)));
        }
    }
    rows
}

fn rows_pos(n: usize) -> Vec<IntVec> {
    (1..=n)
        .map(|i| pv_row(&PairVector::unit(n, true, 0, i)))
        .collect()
}

fn qmet_rows(n: usize) -> Vec<IntVec> {
    let mut rows: Vec<IntVec> = arc_labels(n)
        .into_iter()
        .map(|(i, j)| av_row(&ArcVector::unit(n, i, j)))
        .collect();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i != j && j != k && i != k {
                    rows.push(av_row(&arc_triangle(i, j, k, n)));
                }
            }
        }
    }
    rows
}

fn qn_equality_rows(n: usize) -> Vec<IntVec> {
    exactvec::qn_equalities(n).iter().map(av_row).collect()
}

/// All `b ∈ Z^len` with `|b_i| <= bound` and `Σb = 1`, in lexicographic order.
pub fn hypermetric_bs(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut b = alloc::vec![-bound; len];
    loop {
        if b.iter().sum::<i64>() == 1 {
            out.push(b.clone());
        }
        let mut k = len;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if b[k] < bound {
                b[k] += 1;
                break;
            }
            b[k] = -bound;
        }
    }
}

/// Distinct nonzero hypermetric vectors `f(b)` on `points` points (as
/// `V ∪ {0}`), `|b_i| <= bound`, together with one `b` producing each.
pub fn hypermetric_rows(points: usize, bound: i64) -> Vec<(Vec<i64>, IntVec)> {
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = Vec::new();
    for b in hypermetric_bs(points, bound) {
        let v = hypermetric_vector(&b, true).expect("sum is one");
        if v.is_zero() {
            continue;
        }
        let row = pv_row(&v);
        if seen.insert(row.clone()) {
            out.push((b, row));
        }
    }
    out
}

/// Arc-space row of the transported inequality of `f(b)` (requires
/// `b_0 ∈ {0, 1}`, i.e. `(f(b), e_0) = 0`).
fn transported_hyp_row(b: &[i64]) -> IntVec {
    let n = b.len() - 1;
    let f = hypermetric_vector(b, true).expect("sum is one");
    let nr = rat(n as i64);
    let weights = f.zero_part().iter().map(|x| x / &nr).collect();
    let g = QnVector::new(f.restrict_to_v(), weights).expect("shapes agree");
    av_row(&g.expand())
}

/// Builds the cone with its definitional representation.
pub fn build_cone(id: &ConeId) -> Result<Cone> {
    build_cone_with(id, &BuildLimits::default())
}

pub fn build_cone_with(id: &ConeId, limits: &BuildLimits) -> Result<Cone> {
    let n = id.n;
    let limit = limits.max_points.min(BuildLimits::HARD_MAX);
    if n < 2 {
        return Err(Error::TooLarge {
            what: "cone (at least 2 points needed)",
            points: n,
            limit,
        });
    }
    if n > limit {
        return Err(Error::TooLarge {
            what: id.family.name(),
            points: n,
            limit,
        });
    }
    let ambient = id.ambient();
    let v = n - id.family.counts_zero_point() as usize;
    match id.family {
        Family::Cut => {
            let rays = PointSet::all(v)
                .filter(|s| !s.is_empty())
                .map(|s| pv_row(&cut_vector(s, v, true).expect("in range")))
                .collect();
            Cone::from_rays(ambient, rays)
        }
        Family::OCut => {
            let full = PointSet::full(n);
            let rays = PointSet::all(n)
                .filter(|&s| !s.is_empty() && s != full)
                .map(|s| av_row(&ocut_vector(s, n).expect("in range")))
                .collect();
            Cone::from_rays(ambient, rays)
        }
        Family::CutSym => {
            let rays = PointSet::all(n)
                .filter(|s| !s.is_empty() && !s.contains(n))
                .map(|s| av_row(&sym_cut_vector(s, n).expect("in range")))
                .collect();
            Cone::from_rays(ambient, rays)
        }
        Family::Met => {
            Cone::from_inequalities(ambient, metric_triangles(v, true, true), Vec::new())
        }
        Family::WMet => {
            let mut rows = metric_triangles(n, true, false);
            rows.extend(rows_pos(n));
            Cone::from_inequalities(ambient, rows, Vec::new())
        }
        Family::DWMet => {
            let mut rows = metric_triangles(n, true, false);
            rows.extend(rows_ij(n));
            rows.extend(rows_pos(n));
            Cone::from_inequalities(ambient, rows, Vec::new())
        }
        Family::UWMet => {
            let mut rows = metric_triangles(n, true, false);
            rows.extend(rows_ij0(n));
            rows.extend(rows_pos(n));
            Cone::from_inequalities(ambient, rows, Vec::new())
        }
        Family::Hyp => {
            let rows = hypermetric_rows(n, id.hyp_bound())
                .into_iter()
                .map(|(_, r)| r)
                .collect();
            Cone::from_inequalities(ambient, rows, Vec::new())
        }
        Family::QMet => Cone::from_inequalities(ambient, qmet_rows(n), Vec::new()),
        Family::WQMet => Cone::from_inequalities(ambient, qmet_rows(n), qn_equality_rows(n)),
        Family::WQHyp => {
            let mut seen = alloc::collections::BTreeSet::new();
            let mut rows = Vec::new();
            for (b, _) in hypermetric_rows(n + 1, id.hyp_bound()) {
                if b[0] == 0 || b[0] == 1 {
                    let row = transported_hyp_row(&b);
                    if row.iter().any(|x| !x.is_zero()) && seen.insert(row.clone()) {
                        rows.push(row);
                    }
                }
            }
            Cone::from_inequalities(ambient, rows, qn_equality_rows(n))
        }
    }
}

/// The weighted quasi-metric `ψ(d)` of a semi-metric `d` on `V ∪ {0}`:
/// symmetric part `d^V`, weights `d_(0i)`.
pub fn wqm_from_metric(d: &PairVector) -> Result<QnVector> {
    if !d.has_zero_point() {
        return Err(Error::DimensionMismatch {
            expected: exactvec::pair_count(d.n() + 1),
            found: d.len(),
        });
    }
    let n = d.n();
    for i in 0..=n {
        for j in i + 1..=n {
            if d.get(i, j) < &Rational::zero() {
                return Err(Error::NotAMetric(i, j, j));
            }
            for k in (0..=n).filter(|&k| k != i && k != j) {
                if d.get(i, k) + d.get(k, j) < *d.get(i, j) {
                    return Err(Error::NotAMetric(i, j, k));
                }
            }
        }
    }
    QnVector::new(d.restrict_to_v(), d.zero_part())
}

/// Exact integer coordinates of `v` (panics on a fractional entry).
pub fn to_ints(v: &[Rational]) -> IntVec {
    v.iter()
        .map(|x| {
            assert!(x.denom().is_one(), "fractional coordinate");
            x.numer().clone()
        })
        .collect()
}

/// Sum of integer vectors.
pub fn sum_ints<'a>(vs: impl IntoIterator<Item = &'a IntVec>, len: usize) -> IntVec {
    let mut out = alloc::vec![BigInt::zero(); len];
    for v in vs {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn ps(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    #[test]
    fn clique_web_examples() {
        // r = 0 is the hypermetric inequality
        let f = clique_web_vector(3, 2, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(f, hypermetric_vector(&[1, 1, 1, -1, -1], true).unwrap());
        let cut = build_cone(&ConeId::new(Family::Cut, 7)).unwrap();
        for blocks in [
            &[0, 1, 2, 3, 4, 5, 6][..],
            &[0, 0, 1, 1, 2, 3, 4, 5, 6],
            &[0, 0, 0, 1, 1, 2, 2, 3, 4, 5, 6],
        ] {
            let p = if blocks.len() == 7 {
                5
            } else if blocks.len() == 9 {
                6
            } else {
                7
            };
            let f = clique_web_vector(p, blocks.len() - p, blocks).unwrap();
            assert!(
                cut.is_facet(&f.to_primitive()).unwrap().is_facet,
                "{blocks:?}"
            );
        }
        assert!(clique_web_vector(4, 2, &[0, 1, 2, 3, 4, 5]).is_err());
        assert!(clique_web_vector(5, 2, &[0, 1, 2, 3, 4, 4, 5]).is_err());
    }

    #[test]
    fn cut_examples() {
        assert!(cut_vector(PointSet::EMPTY, 4, true).unwrap().is_zero());
        let e0 = cut_vector(PointSet::full(3), 3, true).unwrap();
        assert_eq!(e0.zero_part(), alloc::vec![rat(1); 3]);
        assert!(e0.restrict_to_v().is_zero());
        let d = cut_vector(ps(&[1]), 3, false).unwrap();
        assert_eq!(d.coords(), &[rat(1), rat(1), rat(0)]);
    }

    #[test]
    fn ocut_examples() {
        assert!(ocut_vector(PointSet::full(4), 4).unwrap().is_zero());
        assert_eq!(ocut_vector(ps(&[1]), 2).unwrap(), ArcVector::unit(2, 1, 2));
        for n in 2..=5 {
            for s in PointSet::all(n) {
                let c = ocut_vector(s, n).unwrap();
                let cb = ocut_vector(s.complement(n), n).unwrap();
                assert_eq!(&c + &cb, sym_cut_vector(s, n).unwrap());
                assert_eq!(&c - &cb, weight_cut_vector(s, n).unwrap());
                assert_eq!(c.transpose(), cb);
                assert!(exactvec::is_in_qn(&c));
            }
        }
    }

    #[test]
    fn weight_cut_modular_and_orthogonal() {
        // Oracle: brute-force set algebra on every pair of subsets.
        for n in 2..=4 {
            for s in PointSet::all(n) {
                for t in PointSet::all(n) {
                    let lhs = &weight_cut_vector(s, n).unwrap() + &weight_cut_vector(t, n).unwrap();
                    let rhs = &weight_cut_vector(s.intersection(t), n).unwrap()
                        + &weight_cut_vector(s.union(t), n).unwrap();
                    assert_eq!(lhs, rhs);
                    assert!(sym_cut_vector(s, n)
                        .unwrap()
                        .dot(&weight_cut_vector(t, n).unwrap())
                        .is_zero());
                }
            }
            assert!(weight_cut_vector(PointSet::full(n), n).unwrap().is_zero());
        }
    }

    #[test]
    fn ocut_submodular() {
        for n in 2..=4 {
            for s in PointSet::all(n) {
                for t in PointSet::all(n) {
                    let c = |x| ocut_vector(x, n).unwrap();
                    let d = &(&c(s) + &c(t)) - &(&c(s.intersection(t)) + &c(s.union(t)));
                    assert!(d.coords().iter().all(|x| x >= &Rational::zero()));
                }
            }
        }
    }

    #[test]
    fn hypermetric_examples() {
        let f = hypermetric_vector(&[1, 1, -1], false).unwrap();
        assert_eq!(f.coords(), &[rat(-1), rat(1), rat(1)]);
        let g = hypermetric_vector(&[2, 1, 1, -1, -1, -1], false).unwrap();
        assert_eq!(g.len(), 15);
        assert_eq!(g.get(1, 2), &rat(-2));
        assert_eq!(g.get(4, 5), &rat(-1));
        assert_eq!(g.get(1, 6), &rat(2));
        assert_eq!(
            hypermetric_vector(&[1, 1], false),
            Err(Error::NotHypermetricType(2))
        );
        // Triangle on V ∪ {0}: b = (b_0; 1, 1, 0, -1).
        let t = hypermetric_vector(&[0, 1, 1, 0, -1], true).unwrap();
        assert_eq!(t, triangle_vector(1, 2, 4, 4, true));
    }

    #[test]
    fn switch_b_examples() {
        assert_eq!(
            switch_b(&[1, 1, -1, -1], ps(&[1, 3]), false).unwrap(),
            [-1, 1, 1, -1]
        );
        assert_eq!(
            switch_b(&[1, 1, -1], PointSet::EMPTY, false).unwrap(),
            [1, 1, -1]
        );
        assert_eq!(
            switch_b(&[1, 1, 1, -1, -1], PointSet::full(4), true).unwrap(),
            [1, -1, -1, 1, 1]
        );
        assert_eq!(
            switch_b(&[1, 1, -1], ps(&[1]), false),
            Err(Error::NotBalanced)
        );
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("CUT_SYM".parse::<Family>().unwrap(), Family::CutSym);
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn definitional_sizes() {
        let cut4 = build_cone(&ConeId::new(Family::Cut, 4)).unwrap();
        assert_eq!(cut4.rays().unwrap().len(), 7);
        assert_eq!(cut4.ambient().dim(), 6);
        let cut5 = build_cone(&ConeId::new(Family::Cut, 5)).unwrap();
        assert_eq!((cut5.rays().unwrap().len(), cut5.ambient().dim()), (15, 10));
        assert_eq!(
            build_cone(&ConeId::new(Family::OCut, 3))
                .unwrap()
                .rays()
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            build_cone(&ConeId::new(Family::OCut, 4))
                .unwrap()
                .rays()
                .unwrap()
                .len(),
            14
        );
        let met4 = build_cone(&ConeId::new(Family::Met, 4)).unwrap();
        assert_eq!(met4.inequalities().unwrap().len(), 12);
        let wq3 = build_cone(&ConeId::new(Family::WQMet, 3)).unwrap();
        assert_eq!(wq3.inequalities().unwrap().len(), 12);
        assert_eq!(wq3.equalities().len(), 1);
        assert!(matches!(
            build_cone(&ConeId::new(Family::Cut, 12)),
            Err(Error::TooLarge { .. })
        ));
        let ocut = build_cone(&ConeId::new(Family::OCut, 4)).unwrap();
        assert_eq!(linalg::rank(ocut.rays().unwrap()), 4 * 5 / 2 - 1);
    }

    #[test]
    fn nonnegativity_implied_by_ij_and_ij0() {
        // (d_(ij)+d_(j0)-d_(i0)) + (d_(i0)+d_(j0)-d_(ij)) = 2 d_(j0).
        let n = 3;
        for (i, j) in [(1, 2), (2, 3), (1, 3)] {
            let a = triangle_vector(i, 0, j, n, true);
            let b = triangle_vector(i, j, 0, n, true);
            assert_eq!(&a + &b, PairVector::unit(n, true, 0, j).scaled(&rat(2)));
        }
    }

    #[test]
    fn wqm_examples() {
        let mut d = cut_vector(ps(&[1]), 3, true)
            .unwrap()
            .restrict_to_v()
            .zero_lift();
        for i in 1..=3 {
            d.set(0, i, rat(1));
        }
        let q = wqm_from_metric(&d).unwrap();
        assert!(q.weights().iter().all(Zero::is_zero));
        let cut = cut_vector(ps(&[2, 3]), 3, true).unwrap();
        let q = wqm_from_metric(&cut).unwrap();
        assert_eq!(
            q.expand(),
            ocut_vector(ps(&[2, 3]), 3).unwrap().scaled(&rat(2))
        );
        let mut bad = PairVector::zeros_extended(2);
        bad.set(1, 2, rat(3));
        assert!(matches!(wqm_from_metric(&bad), Err(Error::NotAMetric(..))));
    }

    #[test]
    fn hyp_bs_enumeration() {
        let bs = hypermetric_bs(3, 1);
        // Compositions of 1 into three parts in {-1,0,1}.
        assert_eq!(bs.len(), 6);
        assert!(bs.windows(2).all(|w| w[0] < w[1]));
    }
}
