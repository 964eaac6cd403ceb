use super::{RatMatrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-style Hermite normal form `A U = H` of an integer matrix.
///
/// `H` is lower echelon: the k-th pivot sits in row `pivot_rows[k]`, column
/// `k`, is positive, and the entries to its left in the same row are reduced
/// into `[0, pivot)`. Columns `rank..d` of `H` are zero, so the matching
/// columns of the unimodular `U` form a Z-basis of the integer kernel.
#[derive(Clone, Debug)]
pub struct ColumnHnf {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub pivot_rows: Vec<usize>,
}

impl ColumnHnf {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Columns of `U` spanning the kernel lattice.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let d = self.u.len();
        (self.rank()..d)
            .map(|c| (0..d).map(|r| self.u[r][c].clone()).collect())
            .collect()
    }
}

fn col_combine(
    m: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
    (a, b): (&BigInt, &BigInt),
    (c, d): (&BigInt, &BigInt),
) {
    // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
    for row in m.iter_mut() {
        let (x, y) = (row[i].clone(), row[j].clone());
        row[i] = a * &x + b * &y;
        row[j] = c * &x + d * &y;
    }
}

pub fn column_hnf(a: &[Vec<BigInt>], d: usize) -> ColumnHnf {
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut col = 0;
    for i in 0..h.len() {
        if col == d {
            break;
        }
        for j in col + 1..d {
            if h[i][j].is_zero() {
                continue;
            }
            let (p, q) = (h[i][col].clone(), h[i][j].clone());
            let e = p.extended_gcd(&q);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (pg, qg) = (&p / &g, &q / &g);
            let neg_qg = -qg;
            // det [[x, -q/g], [y, p/g]] = (x p + y q)/g = 1
            col_combine(&mut h, col, j, (&x, &y), (&neg_qg, &pg));
            col_combine(&mut u, col, j, (&x, &y), (&neg_qg, &pg));
        }
        if h[i][col].is_zero() {
            continue;
        }
        if h[i][col].is_negative() {
            for m in [&mut h, &mut u] {
                for row in m.iter_mut() {
                    row[col] = -&row[col];
                }
            }
        }
        let pivot = h[i][col].clone();
        for k in 0..col {
            let q = h[i][k].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for m in [&mut h, &mut u] {
                for row in m.iter_mut() {
                    let v = &row[col] * &q;
                    row[k] -= v;
                }
            }
        }
        pivot_rows.push(i);
        col += 1;
    }
    ColumnHnf { h, u, pivot_rows }
}

/// Scales each row by the lcm of its denominators, giving an integer matrix
/// with the same row space.
pub(crate) fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = super::lcm_denominators(row);
            row.iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// A Z-basis of `Z^d ∩ ker(A)`.
pub fn integer_kernel(linear_part: &RatMatrix) -> Vec<Vec<BigInt>> {
    column_hnf(&integer_rows(linear_part), linear_part.cols()).kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = b[0].len();
        a.iter()
            .map(|r| {
                (0..n)
                    .map(|j| r.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn kernel_of_difference_and_sum() {
        let k = integer_kernel(&RatMatrix::from_i64(&[&[1, -1]]));
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = k[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == [1, 1] || v == [-1, -1]);

        let k = integer_kernel(&RatMatrix::from_i64(&[&[1, 1]]));
        let v: Vec<i64> = k[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == [1, -1] || v == [-1, 1]);
    }

    #[test]
    fn hnf_reconstructs_and_is_echelon() {
        let a = ints(&[&[2, 4, 6, 8], &[3, 1, 4, 1], &[5, 5, 10, 9]]);
        let f = column_hnf(&a, 4);
        assert_eq!(mat_mul(&a, &f.u), f.h);
        for (k, &r) in f.pivot_rows.iter().enumerate() {
            assert!(f.h[r][k].is_positive());
            for j in k + 1..4 {
                assert!(f.h[r][j].is_zero());
            }
            for j in 0..k {
                assert!(!f.h[r][j].is_negative() && f.h[r][j] < f.h[r][k]);
            }
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // ker (2, 4) over Z is spanned by (2, -1), not (4, -2)
        let k = integer_kernel(&RatMatrix::from_i64(&[&[2, 4]]));
        let v: Vec<i64> = k[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == [2, -1] || v == [-2, 1], "{v:?}");
    }
}
