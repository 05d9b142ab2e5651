//! Smith normal form of integer matrices.
//!
//! Rows are relations and columns generators, so the cokernel of an
//! `m x n` matrix is `Z^n` modulo its row space.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::matrix::IntMatrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithNormalForm {
    /// Diagonal entries `d_1 | d_2 | ...`, `min(rows, cols)` of them,
    /// nonnegative, zeros last.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub free_rank: usize,
}

/// Isomorphism type of a finitely generated abelian group: torsion
/// coefficients greater than one, plus free rank.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Serialize, PartialOrd, Ord)]
pub struct Cokernel {
    pub torsion: Vec<String>,
    pub free_rank: usize,
}

impl SmithNormalForm {
    pub fn cokernel(&self) -> Cokernel {
        Cokernel {
            torsion: self
                .invariant_factors
                .iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .map(|d| d.to_string())
                .collect(),
            free_rank: self.free_rank,
        }
    }

    /// Number of `p`-colorings: `|Hom(coker, Z/p)| = p^(free + #{d_i : p | d_i})`.
    pub fn count_mod_p(&self, p: u64) -> BigInt {
        let p_big = BigInt::from(p);
        let torsion = self
            .invariant_factors
            .iter()
            .filter(|d| !d.is_zero() && (*d % &p_big).is_zero())
            .count();
        num_traits::pow(p_big, self.free_rank + torsion)
    }

    /// Product of the nonzero invariant factors.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).product()
    }
}

impl fmt::Display for Cokernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Display for SmithNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cokernel().fmt(f)
    }
}

/// Smith normal form together with unimodular `u`, `v` such that
/// `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub snf: SmithNormalForm,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    smith_decomposition(m).snf
}

pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest |entry| in the trailing block, ties by (row, col)
        let Some((pi, pj)) = min_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut dirty = false;
        for i in t + 1..rows {
            if a[(i, t)].is_zero() {
                continue;
            }
            let q = a[(i, t)].div_floor(&a[(t, t)]);
            add_row(&mut a, i, t, &-&q);
            add_row(&mut u, i, t, &-&q);
            dirty |= !a[(i, t)].is_zero();
        }
        for j in t + 1..cols {
            if a[(t, j)].is_zero() {
                continue;
            }
            let q = a[(t, j)].div_floor(&a[(t, t)]);
            add_col(&mut a, j, t, &-&q);
            add_col(&mut v, j, t, &-&q);
            dirty |= !a[(t, j)].is_zero();
        }
        if dirty {
            continue;
        }
        // divisibility of the remaining block
        let p = a[(t, t)].clone();
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[(i, j)] % &p).is_zero()));
        if let Some(i) = bad {
            let one = BigInt::one();
            add_row(&mut a, t, i, &one);
            add_row(&mut u, t, i, &one);
            continue;
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }

    let k = rows.min(cols);
    let invariant_factors: Vec<BigInt> = (0..k).map(|i| a[(i, i)].clone()).collect();
    let rank = invariant_factors.iter().filter(|d| !d.is_zero()).count();
    SmithDecomposition {
        snf: SmithNormalForm { invariant_factors, rank, free_rank: cols - rank },
        u,
        v,
        d: a,
    }
}

fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(b, _, _)| x < *b) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// row[dst] += c * row[src]
fn add_row(a: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    for j in 0..a.cols() {
        let d = c * &a[(src, j)];
        a[(dst, j)] += d;
    }
}

/// col[dst] += c * col[src]
fn add_col(a: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    for i in 0..a.rows() {
        let d = c * &a[(i, src)];
        a[(i, dst)] += d;
    }
}

fn negate_row(a: &mut IntMatrix, r: usize) {
    for j in 0..a.cols() {
        a[(r, j)] = -&a[(r, j)];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
        let m = IntMatrix::from_i64(rows, cols);
        smith_normal_form(&m)
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn trefoil_laplacian() {
        let f = factors(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 3);
        assert_eq!(f, vec![1, 3, 0]);
        let m = IntMatrix::from_i64(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 3);
        assert_eq!(smith_normal_form(&m).cokernel().to_string(), "Z + Z/3");
    }

    #[test]
    fn zero_and_rank_one() {
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]], 2), vec![0, 0]);
        assert_eq!(factors(&[vec![3, -3], vec![-3, 3]], 2), vec![3, 0]);
        let snf = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert_eq!(snf.free_rank, 2);
    }

    #[test]
    fn divisibility_fixup() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(factors(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]], 3), vec![2, 2, 60]);
    }

    #[test]
    fn empty_shapes() {
        let snf = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(snf.free_rank, 3);
        assert!(snf.invariant_factors.is_empty());
        let snf = smith_normal_form(&IntMatrix::zeros(2, 0));
        assert_eq!(snf.free_rank, 0);
    }

    #[test]
    fn transforms_reconstruct() {
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let dec = smith_decomposition(&m);
        assert_eq!(dec.u.mul(&m).mul(&dec.v), dec.d);
        let f: Vec<i64> =
            dec.snf.invariant_factors.iter().map(|d| i64::try_from(d).unwrap()).collect();
        assert_eq!(f, vec![2, 6, 12]);
    }

    #[test]
    fn mod_p_counts() {
        let m = IntMatrix::from_i64(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 3);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.count_mod_p(3), BigInt::from(9));
        assert_eq!(snf.count_mod_p(2), BigInt::from(2));
    }
}
