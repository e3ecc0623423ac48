//! Fraction-free row reduction over the rationals.
//!
//! Rows are cleared to primitive integer vectors, eliminated with integer
//! cross-multiplication (dividing each updated row by its content), and only
//! normalized to rationals at the end. The output is the unique reduced row
//! echelon form, so equal row spaces always produce identical matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduced row echelon form of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub ncols: usize,
    /// Nonzero rows only; each has a leading 1 at the matching pivot column.
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Reduces `v` against the rows; zero remainder means `v` lies in the row space.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols, "vector length must match column count");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &c * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Basis of the null space `{x : A x = 0}`, itself in reduced echelon form.
    pub fn null_space(&self) -> Echelon {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<Vec<Rational>> = (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Rational::zero(); self.ncols];
                x[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -row[f].clone();
                }
                x
            })
            .collect();
        echelon(&basis, self.ncols)
    }
}

fn to_primitive(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
    row
}

/// Reduced row echelon form of the matrix whose rows are `rows`.
pub fn echelon(rows: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            to_primitive(r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(found) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        let pivot_row = m[rank].clone();
        let p = &pivot_row[col];
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            let updated: Vec<BigInt> = row
                .iter()
                .zip(&pivot_row)
                .map(|(x, y)| p * x - &a * y)
                .collect();
            *row = make_primitive(updated);
        }
        pivots.push(col);
        rank += 1;
    }
    m.truncate(rank);

    let rows = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter()
                .map(|x| Rational::new(x, lead.clone()))
                .collect()
        })
        .collect();
    Echelon {
        ncols,
        rows,
        pivots,
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    echelon(rows, ncols).rank()
}

/// Null space of the linear map with the given matrix (rows = output coordinates).
pub fn kernel(matrix: &[Vec<Rational>], ncols: usize) -> Echelon {
    echelon(matrix, ncols).null_space()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn rref_of_small_matrix() {
        let e = echelon(&m(&[&[2, 4, 6], &[1, 1, 1]]), 3);
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.rows[0], vec![int(1), int(0), int(-1)]);
        assert_eq!(e.rows[1], vec![int(0), int(1), int(2)]);
    }

    #[test]
    fn fractional_input_matches_integer_scaling() {
        let a = echelon(&[vec![ratio(1, 2), ratio(1, 3)], vec![int(1), int(1)]], 2);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rows, m(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn kernel_of_rank_one_map() {
        // x + y + z = 0
        let k = kernel(&m(&[&[1, 1, 1]]), 3);
        assert_eq!(k.rank(), 2);
        for row in &k.rows {
            let s: Rational = row.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert_eq!(rank(&[], 4), 0);
        assert_eq!(rank(&m(&[&[0, 0]]), 2), 0);
        assert_eq!(kernel(&[], 3).rank(), 3);
    }

    #[test]
    fn membership() {
        let e = echelon(&m(&[&[1, 2, 0], &[0, 0, 1]]), 3);
        assert!(e.contains(&[int(2), int(4), int(-7)]));
        assert!(!e.contains(&[int(0), int(1), int(0)]));
    }
}
