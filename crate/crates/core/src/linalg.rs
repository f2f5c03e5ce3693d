//! Exact dense linear algebra over the rationals: reduced row echelon form
//! and the kernel, rank, and solve routines built on it.

use crate::scalar::{Rat, Scalar};

/// Reduces `m` in place and returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().try_inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel of the matrix with the given rows.
pub fn kernel_basis(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = Rat::zero() - m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Unique solution of `columns * x = rhs`, or `None` when the system is
/// inconsistent or underdetermined.
pub fn solve(columns: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = rhs.len();
    assert!(columns.iter().all(|c| c.len() == n), "column length mismatch");
    let unknowns = columns.len();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&unknowns) {
        return None;
    }
    if pivots.len() < unknowns {
        return None;
    }
    Some((0..unknowns).map(|r| aug[r][unknowns].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn rref_finds_rank_and_kernel() {
        let rows = vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
            vec![q(0, 1), q(1, 1), q(1, 1)],
        ];
        assert_eq!(rank(&rows), 2);
        let ker = kernel_basis(&rows, 3);
        assert_eq!(ker.len(), 1);
        for row in &rows {
            let dot = row
                .iter()
                .zip(&ker[0])
                .fold(Rat::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_reports_unique_inconsistent_and_underdetermined() {
        let cols = vec![vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]];
        let x = solve(&cols, &[q(3, 1), q(2, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(2, 1)]);

        let cols = vec![vec![q(1, 1), q(2, 1)]];
        assert!(solve(&cols, &[q(1, 1), q(3, 1)]).is_none());

        let cols = vec![vec![q(1, 1), q(0, 1)], vec![q(2, 1), q(0, 1)]];
        assert!(solve(&cols, &[q(1, 1), q(0, 1)]).is_none());
    }
}
