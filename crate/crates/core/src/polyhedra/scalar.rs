//! Integer arithmetic used inside the double-description loop: a checked
//! `i64` fast path and an unbounded `BigInt` fallback.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::BigInt;

pub(crate) trait DdScalar: Clone + Ord + Send + Sync + core::fmt::Debug + 'static {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn sign(&self) -> Ordering;
    fn dot(a: &[Self], b: &[Self]) -> Option<Self>;
    /// Primitive form of `s·x - t·y`.
    fn combine(s: &Self, x: &[Self], t: &Self, y: &[Self]) -> Option<Vec<Self>>;
    /// Rank of `rows`, stopping early once `cap` is reached.
    fn rank(rows: &[&[Self]], cap: usize) -> Option<usize>;
}

impl DdScalar for i64 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }

    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        let mut acc: i128 = 0;
        for (x, y) in a.iter().zip(b) {
            acc = acc.checked_add(*x as i128 * *y as i128)?;
        }
        i64::try_from(acc).ok()
    }

    fn combine(s: &Self, x: &[Self], t: &Self, y: &[Self]) -> Option<Vec<Self>> {
        let (s, t) = (*s as i128, *t as i128);
        let mut wide = Vec::with_capacity(x.len());
        let mut g: i128 = 0;
        for (a, b) in x.iter().zip(y) {
            let v = (s * *a as i128).checked_sub(t * *b as i128)?;
            g = g.gcd(&v);
            wide.push(v);
        }
        if g > 1 {
            for v in &mut wide {
                *v /= g;
            }
        }
        wide.into_iter().map(|v| i64::try_from(v).ok()).collect()
    }

    fn rank(rows: &[&[Self]], cap: usize) -> Option<usize> {
        let mut m: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        eliminate(
            &mut m,
            cap,
            |a, b| a.checked_mul(*b),
            |a, b| a.checked_sub(*b),
        )
    }
}

impl DdScalar for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        Some(
            a.iter()
                .zip(b)
                .fold(BigInt::zero(), |acc, (x, y)| acc + x * y),
        )
    }

    fn combine(s: &Self, x: &[Self], t: &Self, y: &[Self]) -> Option<Vec<Self>> {
        let v: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| s * a - t * b).collect();
        Some(crate::linalg::primitive(v))
    }

    fn rank(rows: &[&[Self]], cap: usize) -> Option<usize> {
        let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.to_vec()).collect();
        eliminate(&mut m, cap, |a, b| Some(a * b), |a, b| Some(a - b))
    }
}

/// Fraction-free elimination with gcd reduction of each updated row.
fn eliminate<N>(
    m: &mut [Vec<N>],
    cap: usize,
    mul: impl Fn(&N, &N) -> Option<N>,
    sub: impl Fn(&N, &N) -> Option<N>,
) -> Option<usize>
where
    N: Clone + Integer + Signed,
{
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == cap || rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let (a, b) = (pivot[col].clone(), row[col].clone());
            let mut g = N::zero();
            for c in col..ncols {
                let v = sub(&mul(&row[c], &a)?, &mul(&pivot[c], &b)?)?;
                g = g.gcd(&v);
                row[c] = v;
            }
            if !g.is_zero() && !g.is_one() {
                for x in &mut row[col..ncols] {
                    *x = x.clone() / g.clone();
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}
