//! Smith normal form over the integers with exact big-integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "shape mismatch");
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// `U A V = D` with `U`, `V` unimodular. The inverses are tracked alongside so callers can
/// change coordinates in both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct SnfResult {
    pub d: IMat,
    pub u: IMat,
    pub v: IMat,
    pub u_inv: IMat,
    pub v_inv: IMat,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.v.len());
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Exact re-check of every defining property against the input.
    pub fn verify(&self, a: &IMat) -> bool {
        let m = a.len();
        let n = self.v.len();
        if mat_mul(&mat_mul(&self.u, a), &self.v) != self.d {
            return false;
        }
        if mat_mul(&self.u, &self.u_inv) != identity(m) || mat_mul(&self.v, &self.v_inv) != identity(n) {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                if i != j && !self.d[i][j].is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
    }
}

struct Work {
    a: IMat,
    u: IMat,
    u_inv: IMat,
    v: IMat,
    v_inv: IMat,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for mat in [&mut self.a, &mut self.u] {
            let src = mat[j].clone();
            for (x, s) in mat[i].iter_mut().zip(&src) {
                *x += q * s;
            }
        }
        for row in &mut self.u_inv {
            let s = row[i].clone();
            row[j] -= q * s;
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                let s = row[j].clone();
                row[i] += q * s;
            }
        }
        let src = self.v_inv[i].clone();
        for (x, s) in self.v_inv[j].iter_mut().zip(&src) {
            *x -= q * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in &mut self.u_inv {
            row[i] = -&row[i];
        }
    }
}

pub fn smith_normal_form(a: &IMat) -> SnfResult {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == n), "ragged matrix");
    let mut w = Work { a: a.clone(), u: identity(m), u_inv: identity(m), v: identity(n), v_inv: identity(n) };

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !w.a[i][j].is_zero() && best.map_or(true, |(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.add_row(i, t, &-q);
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.add_col(j, t, &-q);
                }
            }
            let row_left = (t + 1..n).filter(|&j| !w.a[t][j].is_zero()).min_by_key(|&j| w.a[t][j].abs());
            let col_left = (t + 1..m).filter(|&i| !w.a[i][t].is_zero()).min_by_key(|&i| w.a[i][t].abs());
            match (row_left, col_left) {
                (None, None) => {}
                (Some(j), None) => {
                    w.swap_cols(t, j);
                    continue;
                }
                (None, Some(i)) => {
                    w.swap_rows(t, i);
                    continue;
                }
                (Some(j), Some(i)) => {
                    if w.a[t][j].abs() <= w.a[i][t].abs() {
                        w.swap_cols(t, j);
                    } else {
                        w.swap_rows(t, i);
                    }
                    continue;
                }
            }
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !(&w.a[i][j] % &w.a[t][t]).is_zero()));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    SnfResult { d: w.a, u: w.u, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}

/// Basis of the integer kernel `{x in Z^n : A x = 0}`, taken from the trailing columns of `V`.
pub fn integer_kernel(a: &IMat, ncols: usize) -> Vec<Vec<BigInt>> {
    if a.is_empty() {
        return identity(ncols);
    }
    let s = smith_normal_form(a);
    let r = s.rank();
    (r..ncols).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(a: &[Vec<i64>]) -> Vec<BigInt> {
        let s = smith_normal_form(&from_i64(a));
        assert!(s.verify(&from_i64(a)));
        s.diagonal()
    }

    #[test]
    fn small_examples() {
        assert_eq!(diag(&[vec![2, 0], vec![0, 6]]), vec![BigInt::from(2), BigInt::from(6)]);
        assert_eq!(diag(&[vec![2, 4], vec![6, 8]]), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(diag(&[vec![6, 0], vec![0, 4]]), vec![BigInt::from(2), BigInt::from(12)]);
        let z = from_i64(&[vec![0, 0, 0], vec![0, 0, 0]]);
        let s = smith_normal_form(&z);
        assert_eq!(s.u, identity(2));
        assert_eq!(s.v, identity(3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn kernel_of_row() {
        let a = from_i64(&[vec![2, 3, 0]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v.iter().zip(&a[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }
}
