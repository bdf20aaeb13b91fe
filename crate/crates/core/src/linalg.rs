//! Exact linear algebra over ℚ by fraction-free (Bareiss) elimination.
//!
//! Rows are first cleared of denominators, elimination runs on big
//! integers, and only the final back-substitution touches rationals. No
//! rank decision anywhere depends on floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// Row-echelon form of an integer matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn integer_rows(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect()
}

/// Fraction-free elimination. The pivot in each column is the candidate with
/// the largest magnitude.
pub fn echelon(m: &[Vec<Rational>], cols: usize) -> Echelon {
    let mut a = integer_rows(m, cols);
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let best = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .max_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
        let Some(p) = best else { continue };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..nrows {
            let lead = a[i][c].clone();
            for j in c..cols {
                let num = &piv * &a[i][j] - &lead * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(nrows);
    Echelon { rows: a, pivots, cols }
}

pub fn rank(m: &[Vec<Rational>], cols: usize) -> usize {
    echelon(m, cols).rank()
}

/// Solves the echelon system for the pivot variables given values of the
/// free ones. `rhs_col` names an augmented column, if any.
fn back_substitute(e: &Echelon, x: &mut [Rational], rhs_col: Option<usize>) {
    for (r, &c) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[r];
        let mut acc = match rhs_col {
            Some(rc) => Rational::from_integer(row[rc].clone()),
            None => Rational::zero(),
        };
        for j in c + 1..x.len() {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = acc / Rational::from_integer(row[c].clone());
    }
}

/// Basis of `{x : M x = 0}`, one vector per free column, each scaled to a
/// primitive integer vector whose first nonzero entry is positive.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let e = echelon(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            back_substitute(&e, &mut x, None);
            primitive(x)
        })
        .collect()
}

/// Scales a nonzero rational vector to coprime integers with positive
/// leading entry.
pub fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}

/// One solution of `M x = b` (free variables set to zero), or `None` if the
/// system is inconsistent.
pub fn solve(m: &[Vec<Rational>], b: &[Rational], cols: usize) -> Option<Vec<Rational>> {
    assert_eq!(m.len(), b.len());
    let aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = echelon(&aug, cols + 1);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols + 1];
    back_substitute(&e, &mut x, Some(cols));
    x.truncate(cols);
    Some(x)
}

/// `M x` with exact arithmetic.
pub fn mat_vec(m: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn proportional_columns_have_one_dimensional_kernel() {
        let a = m(&[&[1, 2], &[3, 6], &[-2, -4]]);
        let k = nullspace(&a, 2);
        assert_eq!(k, vec![vec![rat(2, 1), rat(-1, 1)]]);
        assert_eq!(rank(&a, 2), 1);
    }

    #[test]
    fn full_rank_has_empty_kernel() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(nullspace(&a, 2).is_empty());
    }

    #[test]
    fn rank_nullity_with_rational_entries() {
        let a = vec![
            vec![rat(1, 2), rat(1, 3), rat(5, 6), rat(0, 1)],
            vec![rat(2, 1), rat(-1, 1), rat(1, 1), rat(3, 7)],
            vec![rat(5, 2), rat(-2, 3), rat(11, 6), rat(3, 7)],
        ];
        let k = nullspace(&a, 4);
        assert_eq!(k.len() + rank(&a, 4), 4);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[2, 1], &[1, -1], &[3, 0]]);
        let x = solve(&a, &[rat(5, 1), rat(1, 1), rat(6, 1)], 2).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
        assert!(solve(&a, &[rat(5, 1), rat(1, 1), rat(7, 1)], 2).is_none());
    }
}
