//! Smith normal form of integer matrices with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// `U·A·V = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `S`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.len().min(self.s.first().map_or(0, Vec::len)))
            .map(|i| self.s[i][i].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    /// Diagonal entries greater than one, i.e. the torsion of the cokernel.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigInt::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc + &row[k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &Matrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Smith normal form. Pivots are the smallest nonzero absolute value in the
/// remaining block, ties broken by row then column; diagonal entries are
/// made nonnegative and each divides the next.
pub fn smith_normal_form(a: &Matrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut s = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    for k in 0..rows.min(cols) {
        loop {
            let pivot = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !s[i][j].is_zero())
                .min_by(|&(i1, j1), &(i2, j2)| {
                    s[i1][j1]
                        .abs()
                        .cmp(&s[i2][j2].abs())
                        .then((i1, j1).cmp(&(i2, j2)))
                });
            let Some((pi, pj)) = pivot else {
                return finish(u, s, v);
            };
            s.swap(k, pi);
            u.swap(k, pi);
            for row in s.iter_mut().chain(v.iter_mut()) {
                row.swap(k, pj);
            }

            let mut clean = true;
            for i in k + 1..rows {
                if s[i][k].is_zero() {
                    continue;
                }
                let q = s[i][k].div_floor(&s[k][k]);
                row_sub(&mut s, i, k, &q);
                row_sub(&mut u, i, k, &q);
                if !s[i][k].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if s[k][j].is_zero() {
                    continue;
                }
                let q = s[k][j].div_floor(&s[k][k]);
                col_sub(&mut s, j, k, &q);
                col_sub(&mut v, j, k, &q);
                if !s[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !s[i][j].is_multiple_of(&s[k][k]))
            });
            match bad {
                Some(i) => {
                    row_add(&mut s, k, i);
                    row_add(&mut u, k, i);
                }
                None => break,
            }
        }
        if s[k][k].is_negative() {
            for x in s[k].iter_mut() {
                *x = -x.clone();
            }
            for x in u[k].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    finish(u, s, v)
}

fn finish(u: Matrix, s: Matrix, v: Matrix) -> SmithForm {
    SmithForm { u, s, v }
}

/// `row_i −= q·row_k`
fn row_sub(m: &mut Matrix, i: usize, k: usize, q: &BigInt) {
    let rk = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(&rk) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// `row_i += row_j`
fn row_add(m: &mut Matrix, i: usize, j: usize) {
    let rj = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(&rj) {
        *x += y;
    }
}

/// `col_j −= q·col_k`
fn col_sub(m: &mut Matrix, j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[k].is_zero() {
            let d = q * &row[k];
            row[j] -= d;
        }
    }
}

pub fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix) -> SmithForm {
        let f = smith_normal_form(a);
        assert_eq!(mat_mul(&mat_mul(&f.u, a), &f.v), f.s);
        assert!(determinant(&f.u).abs().is_one());
        assert!(determinant(&f.v).abs().is_one());
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for (i, row) in f.s.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
        f
    }

    #[test]
    fn split_diagonal() {
        let f = check(&to_matrix(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn two_by_two() {
        let f = check(&to_matrix(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let a = to_matrix(&[vec![0, 0, 0], vec![0, 0, 0]]);
        let f = check(&a);
        assert_eq!(f.u, identity(2));
        assert_eq!(f.v, identity(3));
        assert!(f.diagonal().is_empty());
    }

    #[test]
    fn empty_shapes() {
        check(&Vec::new());
        check(&to_matrix(&[vec![], vec![]]));
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant(&to_matrix(&[vec![2, 4], vec![6, 8]])), BigInt::from(-8));
        assert_eq!(
            determinant(&to_matrix(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]])),
            BigInt::from(-2)
        );
    }
}
