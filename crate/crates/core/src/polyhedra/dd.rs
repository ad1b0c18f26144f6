//! Double-description enumeration of the extreme rays of a pointed cone
//! `{x : a·x >= 0 for every row a}`.
//!
//! Rows are inserted in a fixed order and every intermediate ray is kept as a
//! primitive integer vector together with its zero set (the processed rows it
//! is tight on). Arithmetic runs on checked `i64` first and restarts on
//! `BigInt` if anything overflows.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Signed;

use crate::linalg::{self, Echelon};
use crate::polyhedra::scalar::DdScalar;
use crate::{BigInt, Error, IntVec, Result};

/// How adjacency of two rays is decided when combining them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Adjacency {
    /// No third ray's zero set contains the common zero set.
    #[default]
    Combinatorial,
    /// The rows in the common zero set have rank `dim - 2`.
    Algebraic,
    /// Run both tests and fail loudly if they ever disagree.
    CrossCheck,
    /// Combinatorial while the ray list is short, algebraic afterwards.
    Auto,
}

/// Insertion order of the constraint rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RowOrder {
    /// [`RowOrder::LexMin`] for ray input, [`RowOrder::GradedLex`] for
    /// inequality input.
    #[default]
    Auto,
    /// Lexicographically increasing rows.
    LexMin,
    /// Lexicographically decreasing rows.
    LexMax,
    /// Increasing ℓ1 norm, ties broken lexicographically.
    GradedLex,
    /// The order the rows were given in.
    Input,
}

#[derive(Clone, Debug, Default)]
pub struct DdOptions {
    pub adjacency: Adjacency,
    pub order: RowOrder,
    /// Abort with [`Error::ResourceCap`] when an intermediate cone has more
    /// rays than this.
    pub max_rays: Option<usize>,
}

/// Intermediate state, enough to resume the enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdCheckpoint {
    pub dim: usize,
    pub row_count: usize,
    /// Processing order (row indices); the first `processed` are done.
    pub order: Vec<usize>,
    pub processed: usize,
    pub rays: Vec<IntVec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DdControl {
    Continue,
    Checkpoint,
    CheckpointAndStop,
}

/// Progress hook called after every inserted row.
pub trait DdObserver {
    fn progress(&mut self, _processed: usize, _total: usize, _rays: usize) -> DdControl {
        DdControl::Continue
    }

    fn checkpoint(&mut self, _checkpoint: DdCheckpoint) {}
}

pub struct NoObserver;

impl DdObserver for NoObserver {}

#[derive(Clone, Debug)]
struct Ray<T> {
    coords: Vec<T>,
    zero: Vec<u64>,
}

fn words(bits: usize) -> usize {
    bits.div_ceil(64).max(1)
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        core::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + b)
        })
    })
}

/// Extreme rays of `{x ∈ R^dim : a·x >= 0}`. The rows must have rank `dim`
/// (the cone is pointed); output rays are primitive and sorted.
pub fn extreme_rays(
    rows: &[IntVec],
    dim: usize,
    opts: &DdOptions,
    observer: &mut dyn DdObserver,
    resume: Option<&DdCheckpoint>,
) -> Result<Vec<IntVec>> {
    if rows.is_empty() || dim == 0 {
        return Err(Error::Empty);
    }
    if rows.iter().any(|r| r.len() != dim) {
        let bad = rows.iter().find(|r| r.len() != dim).map_or(0, Vec::len);
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad,
        });
    }
    let start = match resume {
        Some(cp) => {
            validate(cp, rows, dim)?;
            cp.clone()
        }
        None => initial(rows, dim, opts.order)?,
    };
    match run::<i64>(rows, dim, opts, observer, &start) {
        Err(RunError::Overflow) => match run::<BigInt>(rows, dim, opts, observer, &start) {
            Err(RunError::Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
            Err(RunError::Fatal(e)) => Err(e),
            Ok(r) => Ok(r),
        },
        Err(RunError::Fatal(e)) => Err(e),
        Ok(r) => Ok(r),
    }
}

fn validate(cp: &DdCheckpoint, rows: &[IntVec], dim: usize) -> Result<()> {
    let mut seen = vec![false; rows.len()];
    let perm_ok = cp.order.len() == rows.len()
        && cp
            .order
            .iter()
            .all(|&i| i < rows.len() && !core::mem::replace(&mut seen[i], true));
    if cp.dim != dim || cp.row_count != rows.len() || !perm_ok {
        return Err(Error::BadCheckpoint("shape differs".into()));
    }
    if cp.processed < dim || cp.processed > rows.len() {
        return Err(Error::BadCheckpoint("processed count out of range".into()));
    }
    for r in &cp.rays {
        if r.len() != dim {
            return Err(Error::BadCheckpoint("ray dimension".into()));
        }
        for &i in &cp.order[..cp.processed] {
            if linalg::dot(&rows[i], r) < BigInt::from(0) {
                return Err(Error::BadCheckpoint("ray violates a processed row".into()));
            }
        }
    }
    Ok(())
}

fn sorted_order(rows: &[IntVec], order: RowOrder) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    match order {
        RowOrder::Input => {}
        RowOrder::LexMin | RowOrder::Auto => {
            idx.sort_by(|&a, &b| rows[a].cmp(&rows[b]).then(a.cmp(&b)))
        }
        RowOrder::LexMax => idx.sort_by(|&a, &b| rows[b].cmp(&rows[a]).then(a.cmp(&b))),
        RowOrder::GradedLex => {
            let norms: Vec<BigInt> = rows
                .iter()
                .map(|r| r.iter().map(|x| x.abs()).sum())
                .collect();
            idx.sort_by(|&a, &b| {
                norms[a]
                    .cmp(&norms[b])
                    .then_with(|| rows[a].cmp(&rows[b]))
                    .then(a.cmp(&b))
            });
        }
    }
    idx
}

/// Picks the first `dim` independent rows in processing order; the initial
/// cone they bound is simplicial.
fn initial(rows: &[IntVec], dim: usize, order: RowOrder) -> Result<DdCheckpoint> {
    let idx = sorted_order(rows, order);
    let mut ech = Echelon::new();
    let mut basis = Vec::with_capacity(dim);
    let mut rest = Vec::with_capacity(rows.len());
    for &i in &idx {
        if basis.len() < dim && ech.insert(&rows[i]) {
            basis.push(i);
        } else {
            rest.push(i);
        }
    }
    if basis.len() < dim {
        let lineality = linalg::kernel(rows, dim);
        return Err(Error::NotPointed(lineality));
    }
    let mut rays = Vec::with_capacity(dim);
    for (k, &j) in basis.iter().enumerate() {
        let others: Vec<IntVec> = basis
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, &i)| rows[i].clone())
            .collect();
        let mut ker = linalg::kernel(&others, dim);
        debug_assert_eq!(ker.len(), 1);
        let mut r = ker.pop().ok_or(Error::Inconsistent)?;
        if linalg::dot(&rows[j], &r) < BigInt::from(0) {
            r = r.into_iter().map(|x| -x).collect();
        }
        rays.push(r);
    }
    let mut order = basis;
    order.extend(rest);
    Ok(DdCheckpoint {
        dim,
        row_count: rows.len(),
        order,
        processed: dim,
        rays,
    })
}

enum RunError {
    Overflow,
    Fatal(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Fatal(e)
    }
}

struct Engine<'a, T> {
    rows: Vec<Vec<T>>,
    order: &'a [usize],
    dim: usize,
    adjacency: Adjacency,
}

fn run<T: DdScalar>(
    rows: &[IntVec],
    dim: usize,
    opts: &DdOptions,
    observer: &mut dyn DdObserver,
    start: &DdCheckpoint,
) -> core::result::Result<Vec<IntVec>, RunError> {
    let m = rows.len();
    let nw = words(m);
    let conv = |v: &IntVec| -> Option<Vec<T>> { v.iter().map(T::from_big).collect() };
    let ordered: Vec<Vec<T>> = start
        .order
        .iter()
        .map(|&i| conv(&rows[i]))
        .collect::<Option<_>>()
        .ok_or(RunError::Overflow)?;
    let engine = Engine {
        rows: ordered,
        order: &start.order,
        dim,
        adjacency: opts.adjacency,
    };

    let mut rays: Vec<Ray<T>> = Vec::with_capacity(start.rays.len());
    for r in &start.rays {
        let coords = conv(r).ok_or(RunError::Overflow)?;
        let mut zero = vec![0u64; nw];
        for k in 0..start.processed {
            if T::dot(&engine.rows[k], &coords)
                .ok_or(RunError::Overflow)?
                .sign()
                == Ordering::Equal
            {
                set_bit(&mut zero, k);
            }
        }
        rays.push(Ray { coords, zero });
    }

    for k in start.processed..m {
        rays = engine.insert(rays, k)?;
        if let Some(cap) = opts.max_rays {
            if rays.len() > cap {
                observer.checkpoint(engine.checkpoint(&rays, k + 1));
                return Err(Error::ResourceCap {
                    processed: k + 1,
                    total: m,
                    rays: rays.len(),
                }
                .into());
            }
        }
        match observer.progress(k + 1, m, rays.len()) {
            DdControl::Continue => {}
            DdControl::Checkpoint => observer.checkpoint(engine.checkpoint(&rays, k + 1)),
            DdControl::CheckpointAndStop => {
                observer.checkpoint(engine.checkpoint(&rays, k + 1));
                return Err(Error::Interrupted {
                    processed: k + 1,
                    total: m,
                }
                .into());
            }
        }
    }
    let mut out: Vec<IntVec> = rays
        .iter()
        .map(|r| r.coords.iter().map(T::to_big).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// Slot in the pair loop: either a new ray or an overflow signal.
type Produced<T> = Option<Vec<Ray<T>>>;

impl<T: DdScalar> Engine<'_, T> {
    fn checkpoint(&self, rays: &[Ray<T>], processed: usize) -> DdCheckpoint {
        let mut out: Vec<IntVec> = rays
            .iter()
            .map(|r| r.coords.iter().map(T::to_big).collect())
            .collect();
        out.sort();
        DdCheckpoint {
            dim: self.dim,
            row_count: self.rows.len(),
            order: self.order.to_vec(),
            processed,
            rays: out,
        }
    }

    fn insert(&self, rays: Vec<Ray<T>>, k: usize) -> core::result::Result<Vec<Ray<T>>, RunError> {
        let row = &self.rows[k];
        let values: Vec<T> = map_maybe_parallel(&rays, |r| T::dot(row, &r.coords))
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(RunError::Overflow)?;
        let (mut pos, mut neg, mut zer) = (Vec::new(), Vec::new(), Vec::new());
        for (i, v) in values.iter().enumerate() {
            match v.sign() {
                Ordering::Greater => pos.push(i),
                Ordering::Less => neg.push(i),
                Ordering::Equal => zer.push(i),
            }
        }
        if neg.is_empty() {
            let mut rays = rays;
            for &i in &zer {
                set_bit(&mut rays[i].zero, k);
            }
            return Ok(rays);
        }

        let use_comb = match self.adjacency {
            Adjacency::Combinatorial | Adjacency::CrossCheck => true,
            Adjacency::Algebraic => false,
            // One bitset word per 64 rays per row of the zero set versus a
            // rank computation of about dim^3 operations.
            Adjacency::Auto => rays.len() / 64 < self.dim * self.dim / 4,
        };
        let incidence = if use_comb {
            Some(row_incidence(&rays, k))
        } else {
            None
        };

        let produced: Vec<Produced<T>> = map_maybe_parallel(&pos, |&p| {
            let mut out = Vec::new();
            for &n in &neg {
                let z: Vec<u64> = rays[p]
                    .zero
                    .iter()
                    .zip(&rays[n].zero)
                    .map(|(a, b)| a & b)
                    .collect();
                if count(&z) + 2 < self.dim {
                    continue;
                }
                let adjacent = match self.adjacency {
                    Adjacency::Algebraic => self.adjacent_algebraic(&z)?,
                    Adjacency::Combinatorial => {
                        adjacent_combinatorial(&z, incidence.as_ref()?, rays.len())
                    }
                    Adjacency::Auto if use_comb => {
                        adjacent_combinatorial(&z, incidence.as_ref()?, rays.len())
                    }
                    Adjacency::Auto => self.adjacent_algebraic(&z)?,
                    Adjacency::CrossCheck => {
                        let c = adjacent_combinatorial(&z, incidence.as_ref()?, rays.len());
                        let a = self.adjacent_algebraic(&z)?;
                        assert_eq!(c, a, "combinatorial and algebraic adjacency disagree");
                        c
                    }
                };
                if !adjacent {
                    continue;
                }
                let coords = T::combine(&values[p], &rays[n].coords, &values[n], &rays[p].coords)?;
                let mut zero = z;
                set_bit(&mut zero, k);
                out.push(Ray { coords, zero });
            }
            Some(out)
        });

        let mut next = Vec::with_capacity(pos.len() + zer.len());
        let mut rays: Vec<Option<Ray<T>>> = rays.into_iter().map(Some).collect();
        for &i in &pos {
            next.push(rays[i].take().expect("each ray used once"));
        }
        for &i in &zer {
            let mut r = rays[i].take().expect("each ray used once");
            set_bit(&mut r.zero, k);
            next.push(r);
        }
        for chunk in produced {
            next.extend(chunk.ok_or(RunError::Overflow)?);
        }
        Ok(next)
    }

    fn adjacent_algebraic(&self, z: &[u64]) -> Option<bool> {
        let target = self.dim - 2;
        let selected: Vec<&[T]> = bits(z).map(|i| &self.rows[i][..]).collect();
        Some(T::rank(&selected, target)? == target)
    }
}

/// For each processed row, the set of rays tight on it.
fn row_incidence<T>(rays: &[Ray<T>], k: usize) -> Vec<Vec<u64>> {
    let nw = words(rays.len());
    let mut inc = vec![vec![0u64; nw]; k];
    for (ri, r) in rays.iter().enumerate() {
        for row in bits(&r.zero) {
            if row < k {
                set_bit(&mut inc[row], ri);
            }
        }
    }
    inc
}

fn adjacent_combinatorial(z: &[u64], incidence: &[Vec<u64>], ray_count: usize) -> bool {
    let mut rows = bits(z);
    let Some(first) = rows.next() else {
        return ray_count == 2;
    };
    let mut acc = incidence[first].clone();
    for (step, row) in rows.enumerate() {
        for (a, b) in acc.iter_mut().zip(&incidence[row]) {
            *a &= b;
        }
        if step % 4 == 3 && count(&acc) == 2 {
            return true;
        }
    }
    count(&acc) == 2
}

#[cfg(feature = "parallel")]
fn map_maybe_parallel<A: Sync, B: Send>(items: &[A], f: impl Fn(&A) -> B + Sync + Send) -> Vec<B> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_maybe_parallel<A, B>(items: &[A], f: impl Fn(&A) -> B) -> Vec<B> {
    items.iter().map(f).collect()
}

/// Exact rank, on `i64` when the entries fit.
pub fn fast_rank(rows: &[IntVec]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let small: Option<Vec<Vec<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(i64::from_big).collect())
        .collect();
    if let Some(small) = small {
        let refs: Vec<&[i64]> = small.iter().map(|r| &r[..]).collect();
        if let Some(rank) = i64::rank(&refs, width) {
            return rank;
        }
    }
    linalg::rank(rows)
}

/// Rank of the rows tight at `x`, used to certify extreme rays and facets.
pub fn tight_rank(rows: &[IntVec], x: &[BigInt]) -> usize {
    let tight: Vec<IntVec> = rows
        .iter()
        .filter(|r| linalg::dot(r, x) == BigInt::from(0))
        .cloned()
        .collect();
    fast_rank(&tight)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn all_modes() -> [Adjacency; 4] {
        [
            Adjacency::Combinatorial,
            Adjacency::Algebraic,
            Adjacency::CrossCheck,
            Adjacency::Auto,
        ]
    }

    #[test]
    fn orthant_is_self_dual() {
        let rows = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        let rays = extreme_rays(&rows, 3, &DdOptions::default(), &mut NoObserver, None).unwrap();
        assert_eq!(rays, vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
    }

    #[test]
    fn square_cone() {
        // x3 ± x1 >= 0, x3 ± x2 >= 0: a cone over a square with 4 rays.
        let rows = vec![
            iv(&[1, 0, 1]),
            iv(&[-1, 0, 1]),
            iv(&[0, 1, 1]),
            iv(&[0, -1, 1]),
        ];
        for adjacency in all_modes() {
            let opts = DdOptions {
                adjacency,
                ..Default::default()
            };
            let rays = extreme_rays(&rows, 3, &opts, &mut NoObserver, None).unwrap();
            assert_eq!(
                rays,
                vec![
                    iv(&[-1, -1, 1]),
                    iv(&[-1, 1, 1]),
                    iv(&[1, -1, 1]),
                    iv(&[1, 1, 1])
                ]
            );
        }
    }

    #[test]
    fn single_inequality_in_dimension_one() {
        let rays =
            extreme_rays(&[iv(&[1])], 1, &DdOptions::default(), &mut NoObserver, None).unwrap();
        assert_eq!(rays, vec![iv(&[1])]);
    }

    #[test]
    fn lineality_is_reported() {
        let err = extreme_rays(
            &[iv(&[1, 0])],
            2,
            &DdOptions::default(),
            &mut NoObserver,
            None,
        )
        .unwrap_err();
        assert_eq!(err, Error::NotPointed(vec![iv(&[0, 1])]));
    }

    #[test]
    fn big_coefficients_fall_back_to_bigint() {
        let big = 1i64 << 62;
        let rows = vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[big, -big + 1])];
        let rays = extreme_rays(&rows, 2, &DdOptions::default(), &mut NoObserver, None).unwrap();
        assert_eq!(rays, vec![iv(&[1, 0]), iv(&[big - 1, big])]);
    }

    struct StopAfter(usize, Option<DdCheckpoint>);

    impl DdObserver for StopAfter {
        fn progress(&mut self, processed: usize, _: usize, _: usize) -> DdControl {
            if processed == self.0 {
                DdControl::CheckpointAndStop
            } else {
                DdControl::Continue
            }
        }
        fn checkpoint(&mut self, cp: DdCheckpoint) {
            self.1 = Some(cp);
        }
    }

    #[test]
    fn resume_from_checkpoint() {
        let rows = vec![
            iv(&[1, 0, 1]),
            iv(&[-1, 0, 1]),
            iv(&[0, 1, 1]),
            iv(&[0, -1, 1]),
            iv(&[1, 1, 1]),
            iv(&[-1, -1, 2]),
        ];
        let opts = DdOptions::default();
        let full = extreme_rays(&rows, 3, &opts, &mut NoObserver, None).unwrap();
        let mut stop = StopAfter(4, None);
        let err = extreme_rays(&rows, 3, &opts, &mut stop, None).unwrap_err();
        assert!(matches!(err, Error::Interrupted { processed: 4, .. }));
        let cp = stop.1.unwrap();
        let resumed = extreme_rays(&rows, 3, &opts, &mut NoObserver, Some(&cp)).unwrap();
        assert_eq!(resumed, full);
    }

    #[test]
    fn ray_cap_is_enforced() {
        let rows = vec![
            iv(&[1, 0, 1]),
            iv(&[-1, 0, 1]),
            iv(&[0, 1, 1]),
            iv(&[0, -1, 1]),
        ];
        let opts = DdOptions {
            max_rays: Some(3),
            ..Default::default()
        };
        let err = extreme_rays(&rows, 3, &opts, &mut NoObserver, None).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
    }
}
