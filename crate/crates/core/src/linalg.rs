//! Exact integer and rational linear algebra: primitive vectors, rank,
//! kernels and row spaces.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{BigInt, IntVec, Rational};

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(
        a.len(),
        b.len(),
        "dot product of vectors of different length"
    );
    a.iter()
        .zip(b)
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the sign is kept.
pub fn primitive(mut v: IntVec) -> IntVec {
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Positive multiple of a rational vector with coprime integer entries.
pub fn primitive_from_rationals(v: &[Rational]) -> IntVec {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(
        v.iter()
            .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

pub fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}

/// Integer rows kept in echelon form; each new row is reduced against the
/// stored ones in insertion order.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, IntVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[BigInt]) -> IntVec {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let (a, b) = (&row[*pivot], v[*pivot].clone());
            v = primitive(v.iter().zip(row).map(|(x, r)| x * a - r * &b).collect());
        }
        v
    }

    /// Whether `v` lies in the span of the stored rows.
    pub fn spans(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Inserts `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, r));
                true
            }
            None => false,
        }
    }
}

pub fn rank(rows: &[IntVec]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Reduced row echelon form over the rationals; returns the nonzero rows and
/// their pivot columns.
pub fn rref(rows: &[IntVec], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| to_rationals(r)).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let inv = m[top][col].recip();
        for x in &mut m[top] {
            *x *= &inv;
        }
        let pivot_row = m[top].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != top && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    (m, pivots)
}

/// Integer basis of `{x : r·x = 0 for every row r}`, one primitive vector per
/// free column, in column order.
pub fn kernel(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let (m, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(primitive_from_rationals(&v));
    }
    out
}

/// Primitive integer basis of the row space (the nonzero RREF rows).
pub fn row_space_basis(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let (m, _) = rref(rows, ncols);
    m.iter().map(|r| primitive_from_rationals(r)).collect()
}

/// `Σ_k coeffs[k] · basis[k]`.
pub fn combine(coeffs: &[BigInt], basis: &[IntVec], ncols: usize) -> IntVec {
    let mut out = vec![BigInt::zero(); ncols];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Makes the first nonzero entry positive (for sign-free comparisons).
pub fn sign_normalized(v: IntVec) -> IntVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitive_keeps_sign() {
        assert_eq!(primitive(iv(&[-4, 6, 0])), iv(&[-2, 3, 0]));
        assert_eq!(primitive(iv(&[0, 0])), iv(&[0, 0]));
        let r = [
            Rational::new(1.into(), 2.into()),
            Rational::new((-1).into(), 3.into()),
        ];
        assert_eq!(primitive_from_rationals(&r), iv(&[3, -2]));
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![iv(&[1, 2, 3]), iv(&[2, 4, 6]), iv(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        for r in &rows {
            assert!(dot(r, &k[0]).is_zero());
        }
        assert_eq!(row_space_basis(&rows, 3).len(), 2);
        assert_eq!(kernel(&[], 2), vec![iv(&[1, 0]), iv(&[0, 1])]);
    }

    #[test]
    fn echelon_spans() {
        let mut e = Echelon::new();
        assert!(e.insert(&iv(&[0, 2, 1])));
        assert!(e.insert(&iv(&[1, 1, 0])));
        assert!(!e.insert(&iv(&[2, 4, 1])));
        assert!(e.spans(&iv(&[1, 3, 1])));
        assert!(!e.spans(&iv(&[0, 0, 1])));
    }
}
