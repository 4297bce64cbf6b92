//! Exact kernel computation for the rational-independence certificate.
//!
//! Given vectors v_1..v_k over Q, find a nonzero integer vector n with
//! sum n_i v_i = 0, or certify that none exists. Elimination is fraction-free
//! (Bareiss) over the integers so no rounding can enter a certificate.

use crate::rat::{Int, Rat};
use num::integer::Integer;
use num::{One, Signed, Zero};

/// Returns a coprime integer kernel vector of the linear map
/// (n_1..n_k) -> sum n_i rows[i], or None when the rows are independent.
/// The first nonzero entry of the witness is positive.
pub fn integer_kernel_vector(rows: &[Vec<Rat>]) -> Option<Vec<Int>> {
    let k = rows.len();
    if k == 0 {
        return None;
    }
    let dim = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == dim));

    // Columns of m are the input vectors: m is dim x k, kernel of m is wanted.
    // Rows are scaled integer; row scaling preserves the kernel.
    let mut m: Vec<Vec<Int>> = Vec::with_capacity(dim);
    for s in 0..dim {
        let mut lcm = Int::one();
        for r in rows {
            lcm = lcm.lcm(r[s].denom());
        }
        m.push(
            rows.iter()
                .map(|r| (&r[s] * Rat::from_integer(lcm.clone())).to_integer())
                .collect(),
        );
    }

    // Fraction-free elimination to row echelon form, tracking pivot columns.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0usize;
    let mut prev_pivot = Int::one();
    for col in 0..k {
        let Some(pr) = (row..dim).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let pivot = m[row][col].clone();
        for r in row + 1..dim {
            for c in col + 1..k {
                let t = &pivot * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = &t / &prev_pivot;
            }
            m[r][col] = Int::zero();
        }
        prev_pivot = pivot;
        pivot_cols.push(col);
        row += 1;
        if row == dim {
            break;
        }
    }

    if pivot_cols.len() == k {
        return None; // full column rank: only the trivial combination
    }

    // First free column; back-substitute for a rational kernel vector.
    let free = (0..k).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut x = vec![Rat::zero(); k];
    x[free] = Rat::one();
    for (r, &pc) in pivot_cols.iter().enumerate().rev() {
        let mut acc = Rat::zero();
        for c in pc + 1..k {
            if !x[c].is_zero() {
                acc += Rat::from_integer(m[r][c].clone()) * &x[c];
            }
        }
        x[pc] = -acc / Rat::from_integer(m[r][pc].clone());
    }

    // Scale to coprime integers, first nonzero entry positive.
    let mut lcm = Int::one();
    for v in &x {
        lcm = lcm.lcm(v.denom());
    }
    let mut n: Vec<Int> = x
        .iter()
        .map(|v| (v * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = Int::zero();
    for v in &n {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for v in &mut n {
            *v = &*v / &g;
        }
    }
    if let Some(first) = n.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut n {
                *v = -v.clone();
            }
        }
    }
    Some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn zero_row_is_dependent() {
        // a lone rational constant has an empty coefficient vector
        let w = integer_kernel_vector(&[vec![]]).unwrap();
        assert_eq!(w, ints(&[1]));
        let w = integer_kernel_vector(&[vec![rat(0, 1)]]).unwrap();
        assert_eq!(w, ints(&[1]));
    }

    #[test]
    fn independent_basis_vectors() {
        let rows = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        assert!(integer_kernel_vector(&rows).is_none());
    }

    #[test]
    fn simple_dependence() {
        // g and 2g + 1/3: coefficient rows (1) and (2); kernel (2, -1)
        let rows = vec![vec![rat(1, 1)], vec![rat(2, 1)]];
        assert_eq!(integer_kernel_vector(&rows).unwrap(), ints(&[2, -1]));
    }

    #[test]
    fn rational_coefficients_scale_to_coprime() {
        // x = (1/2, 1/3), y = (3/2, 1): 3x - y = 0
        let rows = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), rat(1, 1)]];
        assert_eq!(integer_kernel_vector(&rows).unwrap(), ints(&[3, -1]));
    }

    #[test]
    fn witness_annihilates_rows() {
        let rows = vec![
            vec![rat(2, 3), rat(1, 5), rat(-1, 2)],
            vec![rat(1, 3), rat(2, 5), rat(1, 2)],
            vec![rat(1, 1), rat(3, 5), rat(0, 1)],
        ];
        let n = integer_kernel_vector(&rows).unwrap();
        for s in 0..3 {
            let mut acc = rat(0, 1);
            for (i, r) in rows.iter().enumerate() {
                acc += Rat::from_integer(n[i].clone()) * &r[s];
            }
            assert!(acc.is_zero());
        }
    }
}
