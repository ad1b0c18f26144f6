//! Cones with exact V- and H-representations and conversion between them.
//!
//! Facet normals and rays are primitive integer vectors. Facets returned by
//! [`v_to_h`] lie in the linear span of the rays, which makes them unique;
//! for cones inside `Q_n` this is the canonical representative.

mod dd;
pub(crate) mod scalar;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

pub use dd::{
    extreme_rays, fast_rank, tight_rank, Adjacency, DdCheckpoint, DdControl, DdObserver, DdOptions,
    NoObserver, RowOrder,
};

use crate::exactvec::pair_count;
use crate::linalg::{self, Echelon};
use crate::{BigInt, Error, IntVec, Result};

/// Coordinate space of a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// `R^E` on `V = {1..n}`, or on `V ∪ {0}` when `with_zero`.
    Pairs { n: usize, with_zero: bool },
    /// `R^{E^O}` on `V = {1..n}`.
    Arcs { n: usize },
}

impl Ambient {
    pub fn dim(self) -> usize {
        match self {
            Ambient::Pairs { n, with_zero } => pair_count(n + with_zero as usize),
            Ambient::Arcs { n } => n * n.saturating_sub(1),
        }
    }
}

/// Result of [`v_to_h`]: the linear hull as equalities and the facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub equalities: Vec<IntVec>,
    pub facets: Vec<IntVec>,
}

/// Result of [`h_to_v`]. A nonempty lineality basis means the cone is not
/// pointed; the rays then generate its intersection with the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
}

fn check_dims(vs: &[IntVec], dim: usize) -> Result<()> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

fn dedup_primitive(vs: &[IntVec]) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = Vec::with_capacity(vs.len());
    for v in vs {
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let p = linalg::primitive(v.clone());
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn mat_vec_t(rows: &[IntVec], basis: &[IntVec]) -> Vec<IntVec> {
    rows.iter()
        .map(|r| basis.iter().map(|b| linalg::dot(r, b)).collect())
        .collect()
}

fn with_order(opts: &DdOptions, auto: RowOrder) -> DdOptions {
    let mut opts = opts.clone();
    if opts.order == RowOrder::Auto {
        opts.order = auto;
    }
    opts
}

/// Facets of the cone generated by `rays` in `R^dim`.
pub fn v_to_h(
    rays: &[IntVec],
    dim: usize,
    opts: &DdOptions,
    observer: &mut dyn DdObserver,
    resume: Option<&DdCheckpoint>,
) -> Result<HRep> {
    if rays.is_empty() {
        return Err(Error::Empty);
    }
    check_dims(rays, dim)?;
    let rays = dedup_primitive(rays);
    let equalities = linalg::kernel(&rays, dim);
    let basis = linalg::row_space_basis(&rays, dim);
    if basis.is_empty() {
        return Ok(HRep {
            equalities,
            facets: Vec::new(),
        });
    }
    let rows = mat_vec_t(&rays, &basis);
    let opts = with_order(opts, RowOrder::LexMin);
    let zs = extreme_rays(&rows, basis.len(), &opts, observer, resume)?;
    let mut facets: Vec<IntVec> = zs
        .iter()
        .map(|z| linalg::primitive(linalg::combine(z, &basis, dim)))
        .collect();
    facets.sort();
    Ok(HRep { equalities, facets })
}

/// Extreme rays of `{x : a·x >= 0, e·x = 0}` in `R^dim`.
pub fn h_to_v(
    inequalities: &[IntVec],
    equalities: &[IntVec],
    dim: usize,
    opts: &DdOptions,
    observer: &mut dyn DdObserver,
    resume: Option<&DdCheckpoint>,
) -> Result<VRep> {
    if inequalities.is_empty() {
        return Err(Error::Empty);
    }
    check_dims(inequalities, dim)?;
    check_dims(equalities, dim)?;
    let hull = linalg::kernel(equalities, dim);
    if hull.is_empty() {
        return Ok(VRep {
            rays: Vec::new(),
            lineality: Vec::new(),
        });
    }
    let k = hull.len();
    let local = mat_vec_t(inequalities, &hull);
    let lin_local = linalg::kernel(&local, k);
    let lineality: Vec<IntVec> = lin_local
        .iter()
        .map(|l| linalg::primitive(linalg::combine(l, &hull, dim)))
        .collect();
    let (rows, frame) = if lin_local.is_empty() {
        (local, None)
    } else {
        let w = linalg::row_space_basis(&local, k);
        if w.is_empty() {
            return Ok(VRep {
                rays: Vec::new(),
                lineality,
            });
        }
        (mat_vec_t(&local, &w), Some(w))
    };
    let rdim = frame.as_ref().map_or(k, Vec::len);
    let opts = with_order(opts, RowOrder::GradedLex);
    let ys = extreme_rays(&rows, rdim, &opts, observer, resume)?;
    let mut rays: Vec<IntVec> = ys
        .iter()
        .map(|y| {
            let y = match &frame {
                Some(w) => linalg::combine(y, w, k),
                None => y.clone(),
            };
            linalg::primitive(linalg::combine(&y, &hull, dim))
        })
        .collect();
    rays.sort();
    Ok(VRep { rays, lineality })
}

/// Set of ray indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RaySet(Vec<u64>);

impl RaySet {
    pub fn with_capacity(len: usize) -> Self {
        RaySet(vec![0; len.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        if self.0.len() <= i / 64 {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(|&i| self.contains(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceRecord {
    pub facet: usize,
    pub rays: RaySet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub position: Position,
    /// Inequality indices with `a·x < 0`.
    pub violated: Vec<usize>,
    /// Inequality indices with `a·x = 0`.
    pub tight: Vec<usize>,
    /// Equality indices with `e·x != 0`.
    pub violated_equalities: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCheck {
    pub is_facet: bool,
    pub valid: bool,
    /// Rays on the hyperplane `f·x = 0`.
    pub incident: RaySet,
}

/// A cone with either or both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient: Ambient,
    equalities: Vec<IntVec>,
    inequalities: Option<Vec<IntVec>>,
    rays: Option<Vec<IntVec>>,
    facets_certified: bool,
    rays_certified: bool,
}

impl Cone {
    /// Cone generated by `rays`; zero and repeated generators are dropped.
    pub fn from_rays(ambient: Ambient, rays: Vec<IntVec>) -> Result<Cone> {
        check_dims(&rays, ambient.dim())?;
        Ok(Cone {
            ambient,
            equalities: Vec::new(),
            inequalities: None,
            rays: Some(dedup_primitive(&rays)),
            facets_certified: false,
            rays_certified: false,
        })
    }

    pub fn from_inequalities(
        ambient: Ambient,
        inequalities: Vec<IntVec>,
        equalities: Vec<IntVec>,
    ) -> Result<Cone> {
        check_dims(&inequalities, ambient.dim())?;
        check_dims(&equalities, ambient.dim())?;
        Ok(Cone {
            ambient,
            equalities: dedup_primitive(&equalities),
            inequalities: Some(dedup_primitive(&inequalities)),
            rays: None,
            facets_certified: false,
            rays_certified: false,
        })
    }

    /// Both representations given, e.g. when reloading a converted cone.
    /// Certification flags are not trusted and start out false.
    pub fn from_parts(
        ambient: Ambient,
        equalities: Vec<IntVec>,
        inequalities: Option<Vec<IntVec>>,
        rays: Option<Vec<IntVec>>,
    ) -> Result<Cone> {
        let d = ambient.dim();
        check_dims(&equalities, d)?;
        for side in [&inequalities, &rays].into_iter().flatten() {
            check_dims(side, d)?;
        }
        if inequalities.is_none() && rays.is_none() {
            return Err(Error::MissingRepresentation("ray or inequality"));
        }
        Ok(Cone {
            ambient,
            equalities,
            inequalities,
            rays,
            facets_certified: false,
            rays_certified: false,
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn equalities(&self) -> &[IntVec] {
        &self.equalities
    }

    pub fn inequalities(&self) -> Option<&[IntVec]> {
        self.inequalities.as_deref()
    }

    pub fn rays(&self) -> Option<&[IntVec]> {
        self.rays.as_deref()
    }

    pub fn facets_certified(&self) -> bool {
        self.facets_certified
    }

    pub fn rays_certified(&self) -> bool {
        self.rays_certified
    }

    fn require_rays(&self) -> Result<&[IntVec]> {
        self.rays
            .as_deref()
            .ok_or(Error::MissingRepresentation("ray"))
    }

    fn require_h(&self) -> Result<&[IntVec]> {
        self.inequalities
            .as_deref()
            .ok_or(Error::MissingRepresentation("inequality"))
    }

    /// Replaces the inequalities by the facets computed from the rays.
    /// Equalities become a basis of the orthogonal complement of the span.
    pub fn compute_facets(
        &mut self,
        opts: &DdOptions,
        observer: &mut dyn DdObserver,
        resume: Option<&DdCheckpoint>,
    ) -> Result<()> {
        let rays = self.require_rays()?;
        let h = v_to_h(rays, self.ambient.dim(), opts, observer, resume)?;
        self.equalities = h.equalities;
        self.inequalities = Some(h.facets);
        self.facets_certified = true;
        Ok(())
    }

    /// Replaces the rays by the extreme rays computed from the inequalities.
    pub fn compute_rays(
        &mut self,
        opts: &DdOptions,
        observer: &mut dyn DdObserver,
        resume: Option<&DdCheckpoint>,
    ) -> Result<()> {
        let h = self.require_h()?;
        let v = h_to_v(
            h,
            &self.equalities,
            self.ambient.dim(),
            opts,
            observer,
            resume,
        )?;
        if !v.lineality.is_empty() {
            return Err(Error::NotPointed(v.lineality));
        }
        self.rays = Some(v.rays);
        self.rays_certified = true;
        Ok(())
    }

    pub fn with_facets(mut self) -> Result<Cone> {
        if !self.facets_certified {
            self.compute_facets(&DdOptions::default(), &mut NoObserver, None)?;
        }
        Ok(self)
    }

    pub fn with_rays(mut self) -> Result<Cone> {
        if !self.rays_certified {
            self.compute_rays(&DdOptions::default(), &mut NoObserver, None)?;
        }
        Ok(self)
    }

    /// Dimension of the linear hull. Needs rays; an H-only cone is converted.
    pub fn dim(&self) -> Result<usize> {
        match &self.rays {
            Some(r) => Ok(linalg::rank(r)),
            None => {
                let v = h_to_v(
                    self.require_h()?,
                    &self.equalities,
                    self.ambient.dim(),
                    &DdOptions::default(),
                    &mut NoObserver,
                    None,
                )?;
                Ok(linalg::rank(&v.rays) + v.lineality.len())
            }
        }
    }

    /// Validity and incident-ray rank test of `f` against the rays.
    pub fn is_facet(&self, f: &[BigInt]) -> Result<FacetCheck> {
        let rays = self.require_rays()?;
        let mut incident = RaySet::with_capacity(rays.len());
        let mut valid = true;
        let mut tight = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            let v = linalg::dot(f, r);
            if v.is_negative() {
                valid = false;
            } else if v.is_zero() {
                incident.insert(i);
                tight.push(r.clone());
            }
        }
        let d = linalg::rank(rays);
        let is_facet = valid && d > 0 && tight.len() < rays.len() && linalg::rank(&tight) + 1 == d;
        Ok(FacetCheck {
            is_facet,
            valid,
            incident,
        })
    }

    /// Exact sign classification of `x` against the H-representation.
    pub fn membership(&self, x: &[BigInt]) -> Result<Membership> {
        let h = self.require_h()?;
        let mut out = Membership {
            position: Position::Interior,
            violated: Vec::new(),
            tight: Vec::new(),
            violated_equalities: Vec::new(),
        };
        for (i, e) in self.equalities.iter().enumerate() {
            if !linalg::dot(e, x).is_zero() {
                out.violated_equalities.push(i);
            }
        }
        for (i, a) in h.iter().enumerate() {
            let v = linalg::dot(a, x);
            if v.is_negative() {
                out.violated.push(i);
            } else if v.is_zero() {
                out.tight.push(i);
            }
        }
        out.position = if !out.violated.is_empty() || !out.violated_equalities.is_empty() {
            Position::Outside
        } else if out.tight.is_empty() {
            Position::Interior
        } else {
            Position::Boundary
        };
        Ok(out)
    }

    /// Whether every ray of `other` satisfies this cone's H-representation.
    pub fn contains(&self, other: &Cone) -> Result<bool> {
        let rays = other.require_rays()?;
        for r in rays {
            if self.membership(r)?.position == Position::Outside {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For each inequality, the rays on its hyperplane.
    pub fn incidence(&self) -> Result<Vec<IncidenceRecord>> {
        let h = self.require_h()?;
        let rays = self.require_rays()?;
        Ok(h.iter()
            .enumerate()
            .map(|(facet, a)| {
                let mut set = RaySet::with_capacity(rays.len());
                for (i, r) in rays.iter().enumerate() {
                    if linalg::dot(a, r).is_zero() {
                        set.insert(i);
                    }
                }
                IncidenceRecord { facet, rays: set }
            })
            .collect())
    }

    /// Independent check of both representations: every inequality is a
    /// facet (valid, incident rank `dim - 1`), every ray is extreme (tight
    /// rank `ambient - 1` counting equalities), and rays satisfy equalities.
    pub fn certify(&self) -> Result<bool> {
        let h = self.require_h()?;
        let rays = self.require_rays()?;
        let d = fast_rank(rays);
        let n = self.ambient.dim();
        let mut eq = Echelon::new();
        for e in &self.equalities {
            eq.insert(e);
        }
        if d + eq.rank() != n {
            return Ok(false);
        }
        for r in rays {
            if self.equalities.iter().any(|e| !linalg::dot(e, r).is_zero()) {
                return Ok(false);
            }
            let mut rows: Vec<IntVec> = self.equalities.clone();
            for a in h {
                let v = linalg::dot(a, r);
                if v.is_negative() {
                    return Ok(false);
                }
                if v.is_zero() {
                    rows.push(a.clone());
                }
            }
            if tight_rank(&rows, r) != n - 1 {
                return Ok(false);
            }
        }
        for a in h {
            let tight: Vec<IntVec> = rays
                .iter()
                .filter(|r| linalg::dot(a, r).is_zero())
                .cloned()
                .collect();
            if tight.len() == rays.len() || fast_rank(&tight) + 1 != d {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Cut vectors on 4 points (3 + the point 0) as pair coordinates.
    fn cut4_rays() -> Vec<IntVec> {
        let pairs = crate::exactvec::pair_labels(3, true);
        (1u32..8)
            .map(|s| {
                pairs
                    .iter()
                    .map(|&(i, j)| {
                        let inside = |p: usize| p > 0 && s >> (p - 1) & 1 == 1;
                        BigInt::from((inside(i) != inside(j)) as i64)
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn orthant_round_trip() {
        let units: Vec<IntVec> = (0..4)
            .map(|i| (0..4).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        let h = v_to_h(&units, 4, &DdOptions::default(), &mut NoObserver, None).unwrap();
        assert!(h.equalities.is_empty());
        let mut sorted = units.clone();
        sorted.sort();
        assert_eq!(h.facets, sorted);
    }

    #[test]
    fn cut4_has_twelve_facets() {
        let rays = cut4_rays();
        let h = v_to_h(&rays, 6, &DdOptions::default(), &mut NoObserver, None).unwrap();
        // Oracle: every hyperplane through 5 rays of rank 5 that is valid.
        let mut oracle = Vec::new();
        let idx: Vec<usize> = (0..7).collect();
        for skip in 0..7 {
            for skip2 in skip + 1..7 {
                let sub: Vec<IntVec> = idx
                    .iter()
                    .filter(|&&i| i != skip && i != skip2)
                    .map(|&i| rays[i].clone())
                    .collect();
                let ker = linalg::kernel(&sub, 6);
                if ker.len() != 1 {
                    continue;
                }
                for f in [ker[0].clone(), ker[0].iter().map(|x| -x).collect()] {
                    if rays.iter().all(|r| !linalg::dot(&f, r).is_negative())
                        && !oracle.contains(&f)
                    {
                        oracle.push(f);
                    }
                }
            }
        }
        oracle.sort();
        assert_eq!(h.facets.len(), 12);
        assert_eq!(h.facets, oracle);
        let cone = Cone::from_rays(
            Ambient::Pairs {
                n: 3,
                with_zero: true,
            },
            rays,
        )
        .unwrap()
        .with_facets()
        .unwrap();
        assert!(cone.certify().unwrap());
    }

    #[test]
    fn adjacency_modes_agree() {
        let rays = cut4_rays();
        let base = v_to_h(&rays, 6, &DdOptions::default(), &mut NoObserver, None).unwrap();
        for adjacency in [Adjacency::Algebraic, Adjacency::CrossCheck, Adjacency::Auto] {
            for order in [
                RowOrder::Auto,
                RowOrder::LexMin,
                RowOrder::LexMax,
                RowOrder::Input,
                RowOrder::GradedLex,
            ] {
                let opts = DdOptions {
                    adjacency,
                    order,
                    max_rays: None,
                };
                assert_eq!(
                    v_to_h(&rays, 6, &opts, &mut NoObserver, None).unwrap(),
                    base
                );
            }
        }
    }

    #[test]
    fn met4_has_cut_rays() {
        let rays = cut4_rays();
        let h = v_to_h(&rays, 6, &DdOptions::default(), &mut NoObserver, None).unwrap();
        let v = h_to_v(
            &h.facets,
            &[],
            6,
            &DdOptions::default(),
            &mut NoObserver,
            None,
        )
        .unwrap();
        let mut sorted = rays;
        sorted.sort();
        assert_eq!(v.rays, sorted);
        assert!(v.lineality.is_empty());
    }

    #[test]
    fn cone_in_subspace() {
        // Cone generated by (1,1,0) and (0,1,1) in R^3: a 2-dimensional cone.
        let rays = vec![iv(&[1, 1, 0]), iv(&[0, 1, 1])];
        let h = v_to_h(&rays, 3, &DdOptions::default(), &mut NoObserver, None).unwrap();
        assert_eq!(h.equalities.len(), 1);
        assert_eq!(h.facets.len(), 2);
        for f in &h.facets {
            assert_eq!(linalg::dot(f, &h.equalities[0]), BigInt::zero());
        }
        let v = h_to_v(
            &h.facets,
            &h.equalities,
            3,
            &DdOptions::default(),
            &mut NoObserver,
            None,
        )
        .unwrap();
        assert_eq!(v.rays, vec![iv(&[0, 1, 1]), iv(&[1, 1, 0])]);
    }

    #[test]
    fn lineality_reported() {
        let v = h_to_v(
            &[iv(&[1, 0, 0]), iv(&[0, 1, 0])],
            &[],
            3,
            &DdOptions::default(),
            &mut NoObserver,
            None,
        )
        .unwrap();
        assert_eq!(v.lineality, vec![iv(&[0, 0, 1])]);
        assert_eq!(v.rays, vec![iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
        let mut cone =
            Cone::from_inequalities(Ambient::Arcs { n: 2 }, vec![iv(&[1, 0])], vec![]).unwrap();
        assert!(matches!(
            cone.compute_rays(&DdOptions::default(), &mut NoObserver, None),
            Err(Error::NotPointed(_))
        ));
    }

    #[test]
    fn dimension_one() {
        let v = h_to_v(
            &[iv(&[1])],
            &[],
            1,
            &DdOptions::default(),
            &mut NoObserver,
            None,
        )
        .unwrap();
        assert_eq!(v.rays, vec![iv(&[1])]);
    }

    #[test]
    fn zero_cone() {
        let cone = Cone::from_rays(Ambient::Arcs { n: 2 }, vec![iv(&[0, 0])]).unwrap();
        assert_eq!(cone.dim().unwrap(), 0);
    }

    #[test]
    fn facet_checks_and_membership() {
        let rays = cut4_rays();
        let cone = Cone::from_rays(
            Ambient::Pairs {
                n: 3,
                with_zero: true,
            },
            rays,
        )
        .unwrap()
        .with_facets()
        .unwrap();
        let f = cone.inequalities().unwrap();
        assert!(cone.is_facet(&f[0]).unwrap().is_facet);
        let sum: IntVec = f[0].iter().zip(&f[1]).map(|(a, b)| a + b).collect();
        let check = cone.is_facet(&sum).unwrap();
        assert!(check.valid && !check.is_facet);
        let all: IntVec = (0..6)
            .map(|k| cone.rays().unwrap().iter().map(|r| r[k].clone()).sum())
            .collect();
        assert_eq!(cone.membership(&all).unwrap().position, Position::Interior);
        assert_eq!(
            cone.membership(&cone.rays().unwrap()[0]).unwrap().position,
            Position::Boundary
        );
        let neg: IntVec = all.iter().map(|x| -x).collect();
        assert_eq!(cone.membership(&neg).unwrap().position, Position::Outside);
        assert_eq!(cone.incidence().unwrap().len(), 12);
    }
}
