//! Roots, switchings, the projections `π` and `ψ`, and transport of facets
//! of `Con_{n+1}` to `ψ(Con_{n+1}) ⊂ Q_n`.
//!
//! Two integer layouts are used for facet vectors:
//! - Cut layout: a [`PairVector`] on `V ∪ {0}`, pairs `(0i)` first.
//! - Qn layout ("normalized"): `(g_(ij) for (ij) in E, n·v_1, ..., n·v_n)`,
//!   as produced by [`QnVector::normalized`].
//!
//! A facet vector `f` in Cut layout with `Σ f_(0i) = 0` transports to the
//! Qn-layout vector with the same numbers: `g_(ij) = f_(ij)`, `n·v_i = f_(0i)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::{Signed, Zero};

use crate::exactvec::{pair_count, pair_labels, ArcVector, PairVector, PointSet, QnVector};
use crate::generators::{hypermetric_bs, hypermetric_vector};
use crate::{linalg, BigInt, Error, IntVec, Rational, Result};

/// Generator family a facet vector is evaluated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetKind {
    /// Facet of `Cut_{n+1}`, Cut layout.
    Cut,
    /// Facet of `OCut_n` (or any cone in `Q_n`), Qn layout.
    OCut,
}

fn check_len(v: &[BigInt], expected: usize) -> Result<()> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            found: v.len(),
        })
    }
}

/// `(f, δ(S))` for `f` in Cut layout on `V ∪ {0}`, `|V| = n`.
pub fn cut_value(f: &[BigInt], n: usize, s: PointSet) -> BigInt {
    let mut acc = BigInt::zero();
    for (k, (i, j)) in pair_labels(n, true).into_iter().enumerate() {
        let inside = |p: usize| p > 0 && s.contains(p);
        if inside(i) != inside(j) {
            acc += &f[k];
        }
    }
    acc
}

/// Cut-layout lift of a Qn-layout vector: `f_(ij) = g_(ij)`, `f_(0i) = n·v_i`.
pub fn lift(g: &[BigInt], n: usize) -> Result<IntVec> {
    let np = pair_count(n);
    check_len(g, np + n)?;
    let mut out = g[np..].to_vec();
    out.extend_from_slice(&g[..np]);
    Ok(out)
}

/// Twice `(g, c(S))` under the `Q_n` product, for `g` in Qn layout.
pub fn ocut_value(g: &[BigInt], n: usize, s: PointSet) -> Result<BigInt> {
    Ok(cut_value(&lift(g, n)?, n, s))
}

fn scan_roots(n: usize, value: impl Fn(PointSet) -> BigInt) -> Result<Vec<PointSet>> {
    let mut roots = Vec::new();
    for s in PointSet::all(n) {
        let v = value(s);
        if v.is_negative() {
            return Err(Error::InvalidOnGenerator {
                index: s.bits() as usize,
                generator: Vec::new(),
            });
        }
        if v.is_zero() {
            roots.push(s);
        }
    }
    Ok(roots)
}

/// `R(F) = {S ⊆ V : (f, δ(S)) = 0}` for a valid inequality `f` of `Cut_{n+1}`.
/// Fails with the first generator `δ(S)` on which `f` is negative.
pub fn cut_roots(f: &[BigInt], n: usize) -> Result<Vec<PointSet>> {
    check_len(f, pair_count(n + 1))?;
    scan_roots(n, |s| cut_value(f, n, s)).map_err(|e| witness(e, n, FacetKind::Cut))
}

/// `R(G) = {S ⊆ V : (g, c(S)) = 0}` for a valid inequality of `OCut_n`.
pub fn ocut_roots(g: &[BigInt], n: usize) -> Result<Vec<PointSet>> {
    let f = lift(g, n)?;
    scan_roots(n, |s| cut_value(&f, n, s)).map_err(|e| witness(e, n, FacetKind::OCut))
}

fn witness(e: Error, n: usize, kind: FacetKind) -> Error {
    match e {
        Error::InvalidOnGenerator { index, .. } => {
            let s = PointSet::from_bits(index as u32);
            let generator = match kind {
                FacetKind::Cut => {
                    crate::generators::cut_vector(s, n, true).map(|v| v.to_primitive())
                }
                FacetKind::OCut => crate::generators::ocut_vector(s, n).map(|v| v.to_primitive()),
            }
            .unwrap_or_default();
            Error::InvalidOnGenerator { index, generator }
        }
        e => e,
    }
}

/// `π(x)`: identity on `E`, `x_(0i) ↦ x_(0i) - (1/n) Σ_j x_(0j)`.
pub fn pi_project(x: &PairVector) -> Result<PairVector> {
    if !x.has_zero_point() {
        return Err(Error::DimensionMismatch {
            expected: pair_count(x.n() + 1),
            found: x.len(),
        });
    }
    let n = x.n();
    let zero = x.zero_part();
    let mean = zero.iter().fold(Rational::zero(), |a, b| a + b) / Rational::from_integer(n.into());
    let mut out = x.clone();
    for (i, z) in zero.iter().enumerate() {
        out.set(0, i + 1, z - &mean);
    }
    Ok(out)
}

/// `ψ(x)`: symmetric part `x^V`, weights `x_(0i)` (gauge-shifted).
pub fn psi_point(x: &PairVector) -> Result<QnVector> {
    if !x.has_zero_point() {
        return Err(Error::DimensionMismatch {
            expected: pair_count(x.n() + 1),
            found: x.len(),
        });
    }
    QnVector::new(x.restrict_to_v(), x.zero_part())
}

/// Facet of `ψ(Con_{n+1})` carried by the facet `f` (Cut layout), when `f`
/// contains `e_0`; the vector has symmetric part `f^V` and weights
/// `v_i = f_(0i)/n`.
pub fn transport_facet(f: &PairVector) -> Option<QnVector> {
    if !f.has_zero_point() {
        return None;
    }
    let zero = f.zero_part();
    if !zero.iter().fold(Rational::zero(), |a, b| a + b).is_zero() {
        return None;
    }
    let n = Rational::from_integer(f.n().into());
    let weights = zero.iter().map(|z| z / &n).collect();
    Some(QnVector::new(f.restrict_to_v(), weights).expect("shapes agree"))
}

/// [`transport_facet`] on integer layouts: Cut layout in, Qn layout out.
pub fn transport_ints(f: &[BigInt], n: usize) -> Result<Option<IntVec>> {
    check_len(f, pair_count(n + 1))?;
    if !f[..n].iter().fold(BigInt::zero(), |a, b| a + b).is_zero() {
        return Ok(None);
    }
    let mut out = f[n..].to_vec();
    out.extend_from_slice(&f[..n]);
    Ok(Some(linalg::primitive(out)))
}

/// Switching of a `Cut_{n+1}` facet by a root `T ⊆ V`: coefficients on the
/// pairs of `δ(T)` change sign.
pub fn switch_cut(f: &[BigInt], n: usize, t: PointSet) -> Result<IntVec> {
    check_len(f, pair_count(n + 1))?;
    if !cut_value(f, n, t).is_zero() {
        return Err(Error::NotRoot);
    }
    let inside = |p: usize| p > 0 && t.contains(p);
    Ok(pair_labels(n, true)
        .into_iter()
        .zip(f)
        .map(|((i, j), x)| {
            if inside(i) != inside(j) {
                -x
            } else {
                x.clone()
            }
        })
        .collect())
}

/// Switching of an `OCut_n` facet (Qn layout) by `T`, defined when `T` and
/// `V - T` are both roots.
pub fn switch_ocut(g: &[BigInt], n: usize, t: PointSet) -> Result<IntVec> {
    let f = lift(g, n)?;
    if !cut_value(&f, n, t).is_zero() {
        return Err(Error::NotRoot);
    }
    if !cut_value(&f, n, t.complement(n)).is_zero() {
        return Err(Error::ComplementNotRoot);
    }
    let switched = switch_cut(&f, n, t)?;
    Ok(transport_ints(&switched, n)?.expect("complement of T is a root"))
}

/// `g*` in Qn layout: weights negated.
pub fn star(g: &[BigInt], n: usize) -> IntVec {
    let np = pair_count(n);
    g.iter()
        .enumerate()
        .map(|(k, x)| if k < np { x.clone() } else { -x })
        .collect()
}

/// A facet vector with its roots and classification flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetRecord {
    pub kind: FacetKind,
    /// `|V|`.
    pub n: usize,
    pub vector: IntVec,
    /// Sorted root sets; always contains `∅`.
    pub roots: Vec<PointSet>,
    /// `V ∈ R`: for `Cut_{n+1}` the facet contains `e_0`; trivial for `OCut_n`.
    pub contains_l0: bool,
    pub zero_lifting: bool,
    pub symmetric: bool,
    pub orbit_id: Option<u64>,
}

impl FacetRecord {
    pub fn new(kind: FacetKind, n: usize, vector: IntVec) -> Result<FacetRecord> {
        let roots = match kind {
            FacetKind::Cut => cut_roots(&vector, n)?,
            FacetKind::OCut => ocut_roots(&vector, n)?,
        };
        let full = PointSet::full(n);
        let contains_l0 = roots.contains(&full);
        let weight_part = match kind {
            FacetKind::Cut => &vector[..n],
            FacetKind::OCut => &vector[pair_count(n)..],
        };
        let zero_lifting = weight_part.iter().all(Zero::is_zero);
        Ok(FacetRecord {
            kind,
            n,
            vector,
            roots,
            contains_l0,
            zero_lifting,
            symmetric: zero_lifting,
            orbit_id: None,
        })
    }

    pub fn is_root(&self, s: PointSet) -> bool {
        self.roots.binary_search(&s).is_ok()
    }

    /// Roots other than the trivial `∅` (and `V` for `OCut_n`).
    pub fn nontrivial_roots(&self) -> impl Iterator<Item = PointSet> + '_ {
        let full = PointSet::full(self.n);
        let kind = self.kind;
        self.roots
            .iter()
            .copied()
            .filter(move |&s| !s.is_empty() && !(kind == FacetKind::OCut && s == full))
    }

    pub fn switch(&self, t: PointSet) -> Result<FacetRecord> {
        let vector = match self.kind {
            FacetKind::Cut => switch_cut(&self.vector, self.n, t)?,
            FacetKind::OCut => switch_ocut(&self.vector, self.n, t)?,
        };
        let mut out = FacetRecord::new(self.kind, self.n, vector)?;
        debug_assert_eq!(out.roots, {
            let mut r: Vec<PointSet> = self
                .roots
                .iter()
                .map(|s| s.symmetric_difference(t))
                .collect();
            r.sort();
            r
        });
        out.orbit_id = None;
        Ok(out)
    }

    /// The facet of `ψ(Cut_{n+1})` this `Cut_{n+1}` facet projects to.
    pub fn transport(&self) -> Option<FacetRecord> {
        if self.kind != FacetKind::Cut {
            return None;
        }
        let g = transport_ints(&self.vector, self.n).ok()??;
        FacetRecord::new(FacetKind::OCut, self.n, g).ok()
    }
}

/// Symmetric (zero-lifted) versus asymmetric facets of a cone in `Q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacetClass {
    /// All weights vanish; `base` is the facet `F^V` on `V` it zero-lifts.
    Symmetric { base: IntVec },
    /// `partner` is `g*`, again a facet.
    Asymmetric { partner: IntVec },
}

/// Classifies a Qn-layout facet vector.
pub fn classify_facet(g: &[BigInt], n: usize) -> Result<FacetClass> {
    let np = pair_count(n);
    check_len(g, np + n)?;
    if g[np..].iter().all(Zero::is_zero) {
        Ok(FacetClass::Symmetric {
            base: linalg::primitive(g[..np].to_vec()),
        })
    } else {
        Ok(FacetClass::Asymmetric {
            partner: star(g, n),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypProjection {
    /// `μ = 1`, `b_0 = 0`: a hypermetric inequality on `V`.
    Hypermetric(QnVector),
    /// `μ = 0`, `b_0 = 1`: the weighted distortion of a negative type inequality.
    NegativeTypeDistortion(QnVector),
    NotAFacet,
}

/// Image under `ψ` of the hypermetric facet `f(b)`, `b = (b_0, b_1..b_n)`.
pub fn classify_hyp_projection(b: &[i64]) -> Result<HypProjection> {
    let total: i64 = b.iter().sum();
    if total != 1 {
        return Err(Error::NotHypermetricType(total));
    }
    let mu: i64 = b[1..].iter().sum();
    let build = || {
        transport_facet(&hypermetric_vector(b, true).expect("sum is one")).expect("contains e_0")
    };
    Ok(match (mu, b[0]) {
        (1, 0) => HypProjection::Hypermetric(build()),
        (0, 1) => HypProjection::NegativeTypeDistortion(build()),
        _ => HypProjection::NotAFacet,
    })
}

/// Exponent notation with entries sorted descending, e.g. `(1^2,0,-1)`.
pub fn b_label(b: &[i64]) -> String {
    let mut sorted = b.to_vec();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    let mut out = String::from("(");
    let mut k = 0;
    while k < sorted.len() {
        let run = sorted[k..].iter().take_while(|&&x| x == sorted[k]).count();
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}", sorted[k]);
        if run > 1 {
            let _ = write!(out, "^{run}");
        }
        k += run;
    }
    out.push(')');
    out
}

/// Lookup of `b` from primitive `f(b)` (Cut layout on `V ∪ {0}`).
#[derive(Clone, Debug)]
pub struct HypermetricIndex {
    n: usize,
    map: BTreeMap<IntVec, Vec<i64>>,
}

impl HypermetricIndex {
    /// All `b` on `n + 1` points with `|b_i| <= bound` and `Σb = 1`.
    pub fn new(n: usize, bound: i64) -> HypermetricIndex {
        let mut map = BTreeMap::new();
        for b in hypermetric_bs(n + 1, bound) {
            let v = hypermetric_vector(&b, true).expect("sum is one");
            if !v.is_zero() {
                map.entry(v.to_primitive()).or_insert(b);
            }
        }
        HypermetricIndex { n, map }
    }

    /// `b` with `f(b)` a positive multiple of `f`, if within the bound.
    pub fn lookup(&self, f: &[BigInt]) -> Option<&[i64]> {
        if f.len() != pair_count(self.n + 1) {
            return None;
        }
        self.map
            .get(&linalg::primitive(f.to_vec()))
            .map(Vec::as_slice)
    }

    /// Label of a Cut-layout facet: the whole `b`.
    pub fn cut_label(&self, f: &[BigInt]) -> Option<String> {
        self.lookup(f).map(b_label)
    }

    /// Label of a Qn-layout facet: the `V`-part of `b` for its lift.
    pub fn ocut_label(&self, g: &[BigInt]) -> Option<String> {
        let f = lift(g, self.n).ok()?;
        self.lookup(&f).map(|b| b_label(&b[1..]))
    }
}

/// `e_ij` as an arc vector in canonical Qn form, for tests and reports.
pub fn canonical_arc(g: &ArcVector) -> QnVector {
    crate::exactvec::project_to_qn(g).0
}
