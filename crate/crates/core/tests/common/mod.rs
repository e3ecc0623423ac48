//! Test-only oracles, independent of the library's elimination and sign code.
#![allow(dead_code)]

use carnot_core::rational::Rational;
use num_traits::{One, Zero};

/// Rank by textbook Gaussian elimination over the rationals.
pub fn naive_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &pivot;
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row).take(ncols) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Leibniz expansion of `det[δ(rows[i], cols[j])]`, i.e. the pairing of
/// `e^{rows[0]} ∧ … ∧ e^{rows[k-1]}` with `e_{cols[0]} ∧ … ∧ e_{cols[k-1]}`.
pub fn det_pairing(rows: &[usize], cols: &[usize]) -> Rational {
    assert_eq!(rows.len(), cols.len());
    let k = rows.len();
    let mut total = Rational::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        if (0..k).all(|i| rows[i] == cols[perm[i]]) {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            total += if inversions % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
        }
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

pub fn tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, n, &mut Vec::new(), &mut out);
    out
}
