//! Dense univariate polynomials over an exact field, coefficients in
//! ascending order. Only what the Laurent gcd and the Sturm zero test need.

use std::ops::Neg;

use num_traits::Num;

pub(crate) trait FieldElem: Clone + PartialEq + Num + Neg<Output = Self> {}
impl<T: Clone + PartialEq + Num + Neg<Output = T>> FieldElem for T {}

pub(crate) fn trim<T: FieldElem>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree<T: FieldElem>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul<T: FieldElem>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(&mut out);
    out
}

#[cfg(test)]
pub(crate) fn add<T: FieldElem>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    let mut out: Vec<T> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(T::zero);
            let y = b.get(i).cloned().unwrap_or_else(T::zero);
            x + y
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn scale<T: FieldElem>(a: &[T], c: &T) -> Vec<T> {
    let mut out: Vec<T> = a.iter().map(|x| x.clone() * c.clone()).collect();
    trim(&mut out);
    out
}

/// Euclidean division `a = q·b + r` with `deg r < deg b`. Panics if `b = 0`.
pub(crate) fn div_rem<T: FieldElem>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r: Vec<T> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![T::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone() / lead.clone();
        let shift = dr - db;
        for (i, bi) in b[..=db].iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - c.clone() * bi.clone();
        }
        // cancels exactly
        r[dr] = T::zero();
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn monic<T: FieldElem>(p: &[T]) -> Vec<T> {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let inv = T::one() / p[d].clone();
            scale(&p[..=d], &inv)
        }
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub(crate) fn gcd<T: FieldElem>(a: &[T], b: &[T]) -> Vec<T> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        // keeping the remainder monic tames coefficient growth
        x = std::mem::replace(&mut y, monic(&r));
    }
    monic(&x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn division_reconstructs_dividend() {
        let a = q(&[1, 0, -3, 2, 5]);
        let b = q(&[2, 1, 1]);
        let (quo, rem) = div_rem(&a, &b);
        assert!(degree(&rem).is_none_or(|d| d < 2));
        assert_eq!(add(&mul(&quo, &b), &rem), a);
    }

    #[test]
    fn gcd_of_products() {
        let f = q(&[1, 1]); // 1 + z
        let g = q(&[-2, 1]); // z - 2
        let h = q(&[3, 0, 1]); // z^2 + 3
        let a = mul(&mul(&f, &g), &h);
        let b = mul(&mul(&f, &h), &q(&[7, 1]));
        assert_eq!(gcd(&a, &b), mul(&f, &h));
        assert_eq!(gcd(&f, &g), q(&[1]));
        assert!(gcd::<Rational>(&[], &[]).is_empty());
    }
}
