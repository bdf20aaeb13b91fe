//! Exact divisibility questions over ℚ. Nothing here looks at a numeric
//! root: zero-freeness is decided by a Sturm count, division by an exact
//! linear solve and gcds by Euclid over the Gaussian rationals.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg;
use crate::scalar::Rational;
use crate::trig::ExactPoly;
use crate::upoly;

type GaussQ = Complex<Rational>;

/// `(1 + u²)ⁿ · P(2·atan u)` as a polynomial in `u`.
///
/// Uses `(1 + u²)ⁿ e^{ikt} = (1 + iu)^{n+k} (1 − iu)^{n−k}` with
/// `u = tan(t/2)`; the real and imaginary parts carry `cos(kt)` and `sin(kt)`.
fn half_angle_numerator(p: &ExactPoly) -> Vec<Rational> {
    let n = p.degree().unwrap_or(0);
    let one = Rational::one();
    let zero = Rational::zero();
    let plus = vec![
        GaussQ::new(one.clone(), zero.clone()),
        GaussQ::new(zero.clone(), one.clone()),
    ];
    let minus = vec![
        GaussQ::new(one.clone(), zero.clone()),
        GaussQ::new(zero.clone(), -one.clone()),
    ];
    let mut plus_pow = vec![vec![GaussQ::one()]];
    for k in 1..=2 * n {
        plus_pow.push(upoly::mul(&plus_pow[k - 1], &plus));
    }
    let mut minus_pow = vec![vec![GaussQ::one()]];
    for k in 1..=n {
        minus_pow.push(upoly::mul(&minus_pow[k - 1], &minus));
    }
    let mut out = vec![Rational::zero(); 2 * n + 1];
    for k in 0..=n {
        let w = upoly::mul(&plus_pow[n + k], &minus_pow[n - k]);
        let a = p.cos_coeff(k);
        let b = p.sin_coeff(k);
        for (i, c) in w.iter().enumerate() {
            out[i] += &a * &c.re + &b * &c.im;
        }
    }
    upoly::trim(&mut out);
    out
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots by a Sturm sequence.
fn distinct_real_roots(p: &[Rational]) -> usize {
    let Some(d) = upoly::degree(p) else { return 0 };
    if d == 0 {
        return 0;
    }
    let deriv: Vec<Rational> = (1..=d).map(|i| &p[i] * Rational::from_integer(i.into())).collect();
    let mut seq = vec![p[..=d].to_vec(), deriv];
    loop {
        let n = seq.len();
        let (_, r) = upoly::div_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let sign = |q: &Rational| -> i8 {
        if q.is_positive() {
            1
        } else if q.is_negative() {
            -1
        } else {
            0
        }
    };
    let at_pos = seq.iter().map(|s| sign(s.last().unwrap()));
    let at_neg = seq.iter().map(|s| {
        let lead = sign(s.last().unwrap());
        if (s.len() - 1) % 2 == 1 {
            -lead
        } else {
            lead
        }
    });
    sign_changes(at_neg) - sign_changes(at_pos)
}

/// Exact test that `P(t) ≠ 0` for every real `t`.
///
/// Nonzero constants are zero-free; the zero polynomial is not.
pub fn is_zero_free_exact(p: &ExactPoly) -> bool {
    match p.degree() {
        None => false,
        Some(0) => true,
        Some(n) => {
            // t = π is the point the half-angle substitution cannot reach
            let at_pi: Rational = (0..=n)
                .map(|k| if k % 2 == 0 { p.cos_coeff(k) } else { -p.cos_coeff(k) })
                .sum();
            if at_pi.is_zero() {
                return false;
            }
            distinct_real_roots(&half_angle_numerator(p)) == 0
        }
    }
}

/// `Q` with `P = D·Q`, or `None` if `D` does not divide `P`.
///
/// The unknown coefficients of `Q` (degree `deg P − deg D`) are found by an
/// exact linear solve against the coefficient vector of `P`.
pub fn divides_exact(d: &ExactPoly, p: &ExactPoly) -> Option<ExactPoly> {
    let dd = d.degree()?;
    let Some(dp) = p.degree() else {
        return Some(ExactPoly::zero());
    };
    if dd > dp {
        return None;
    }
    let m = dp - dd;
    let basis: Vec<ExactPoly> = std::iter::once(ExactPoly::one())
        .chain((1..=m).flat_map(|k| [ExactPoly::cos_k(k), ExactPoly::sin_k(k)]))
        .collect();
    let columns: Vec<Vec<Rational>> = basis.iter().map(|e| (d * e).coeff_vector(dp)).collect();
    let rows = 2 * dp + 1;
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let x = linalg::solve(&matrix, &p.coeff_vector(dp), basis.len())?;
    Some(ExactPoly::from_coeff_vector(&x))
}

/// Ascending coefficients of `zⁿ · L(z)` over ℚ(i).
fn z_poly(p: &ExactPoly) -> Vec<GaussQ> {
    let mut v = p.to_laurent().coeffs().to_vec();
    upoly::trim(&mut v);
    v
}

/// Monic gcd of the Laurent images, as a polynomial in `z`.
pub(crate) fn laurent_gcd_z(p: &ExactPoly, q: &ExactPoly) -> Vec<GaussQ> {
    upoly::gcd(&z_poly(p), &z_poly(q))
}

/// Maps a self-reciprocal gcd back to ℝ[cos t, sin t], scaled so `a₀ = 1`.
pub(crate) fn z_poly_to_trig(g: &[GaussQ]) -> Result<ExactPoly> {
    let deg = upoly::degree(g).unwrap_or(0);
    if deg % 2 == 1 {
        return Err(Error::Inconsistent(
            "gcd has odd z-degree; inputs are not real trigonometric polynomials".into(),
        ));
    }
    let half = deg / 2;
    let c0 = g[half].clone();
    if c0.is_zero() {
        return Err(Error::Inconsistent("gcd has vanishing mean".into()));
    }
    let inv = GaussQ::one() / c0;
    let scaled = LaurentPoly::from_coeffs(g[..=deg].iter().map(|c| c.clone() * inv.clone()).collect());
    scaled.to_trig()
}

/// Greatest common divisor of two zero-free polynomials, normalized so
/// that its constant coefficient is 1.
pub fn gcd_zero_free(p1: &ExactPoly, p2: &ExactPoly) -> Result<ExactPoly> {
    if !is_zero_free_exact(p1) {
        return Err(Error::NotZeroFree("first argument"));
    }
    if !is_zero_free_exact(p2) {
        return Err(Error::NotZeroFree("second argument"));
    }
    z_poly_to_trig(&laurent_gcd_z(p1, p2))
}

/// Whether `P` and `Q` share an irreducible factor in ℝ[cos t, sin t].
/// `P` must be zero-free; otherwise sharing a complex factor does not
/// imply sharing a real one.
pub fn common_irreducible_factor(p: &ExactPoly, q: &ExactPoly) -> Result<bool> {
    if !is_zero_free_exact(p) {
        return Err(Error::NotZeroFree("P"));
    }
    if p.is_unit() {
        return Ok(false);
    }
    Ok(upoly::degree(&laurent_gcd_z(p, q)).unwrap_or(0) > 0)
}

/// The part of `D` supported on the irreducible factors of the zero-free
/// `G`, with multiplicity, normalized to `a₀ = 1`.
pub(crate) fn part_dividing(d: &ExactPoly, g: &ExactPoly) -> Result<ExactPoly> {
    let mut rest = d.clone();
    let mut acc = ExactPoly::one();
    loop {
        let h = laurent_gcd_z(&rest, g);
        if upoly::degree(&h).unwrap_or(0) == 0 {
            let a0 = acc.constant_term();
            return Ok(acc.scale(&(Rational::one() / a0)));
        }
        let h = z_poly_to_trig(&h)?;
        rest =
            divides_exact(&h, &rest).ok_or_else(|| Error::Inconsistent("gcd does not divide its argument".into()))?;
        acc = &acc * &h;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(cos: &[i64], sin: &[i64]) -> ExactPoly {
        ExactPoly::from_ints(cos, sin)
    }

    fn cos2() -> ExactPoly {
        p(&[2, 1], &[])
    }
    fn sin2() -> ExactPoly {
        p(&[2], &[1])
    }
    fn sin4() -> ExactPoly {
        p(&[4], &[1])
    }

    #[test]
    fn zero_free_examples() {
        assert!(is_zero_free_exact(&cos2()));
        assert!(!is_zero_free_exact(&p(&[0], &[1])));
        assert!(is_zero_free_exact(&(&(&cos2() * &sin2()) * &sin4())));
        // touches zero at t = π only
        assert!(!is_zero_free_exact(&p(&[1, 1], &[])));
        // double zero: (1 + cos t)^2 ≥ 0 vanishes at π
        assert!(!is_zero_free_exact(&p(&[1, 1], &[]).pow(2)));
        // 1 + sin t has a double zero at 3π/2
        assert!(!is_zero_free_exact(&p(&[1], &[1])));
        assert!(is_zero_free_exact(&ExactPoly::constant(rat(-3, 1))));
        assert!(!is_zero_free_exact(&ExactPoly::zero()));
        // 3cos 2t + 8cos t − 4sin t + 1 changes sign
        assert!(!is_zero_free_exact(&p(&[1, 8, 3], &[-4, 0])));
    }

    #[test]
    fn exact_division_examples() {
        let prod = &cos2() * &sin2();
        assert_eq!(divides_exact(&sin2(), &prod), Some(cos2()));
        assert_eq!(divides_exact(&sin2(), &(&cos2() * &sin4())), None);
        assert_eq!(divides_exact(&prod, &prod), Some(ExactPoly::one()));
        assert_eq!(divides_exact(&prod, &cos2()), None);
        assert_eq!(divides_exact(&cos2(), &ExactPoly::zero()), Some(ExactPoly::zero()));
        assert_eq!(divides_exact(&ExactPoly::zero(), &cos2()), None);
        assert_eq!(
            divides_exact(&ExactPoly::constant(rat(2, 1)), &cos2()),
            Some(cos2().scale(&rat(1, 2)))
        );
    }

    #[test]
    fn gcd_examples() {
        let g = &cos2() * &sin2();
        let p1 = g.scale(&rat(2, 1));
        let p2 = &g * &sin4();
        let gcd = gcd_zero_free(&p1, &p2).unwrap();
        assert_eq!(gcd, g.scale(&rat(1, 4)));
        assert_eq!(gcd.constant_term(), rat(1, 1));
        assert_eq!(
            gcd_zero_free(&p2, &p2).unwrap(),
            p2.scale(&(rat(1, 1) / p2.constant_term()))
        );
        assert_eq!(gcd_zero_free(&cos2(), &sin2()).unwrap(), ExactPoly::one());
        assert!(matches!(
            gcd_zero_free(&p(&[0], &[1]), &cos2()),
            Err(Error::NotZeroFree(_))
        ));
    }

    #[test]
    fn common_factor_examples() {
        assert!(common_irreducible_factor(&(&cos2() * &sin2()), &(&sin2() * &sin4())).unwrap());
        assert!(!common_irreducible_factor(&cos2(), &sin4()).unwrap());
        assert!(!common_irreducible_factor(&ExactPoly::one(), &cos2()).unwrap());
    }

    #[test]
    fn part_dividing_extracts_multiplicity() {
        let g = &cos2() * &sin2();
        let d = &(&sin2() * &sin2()) * &p(&[0], &[1]);
        let part = part_dividing(&d, &g).unwrap();
        let expected = (&sin2() * &sin2()).scale(&rat(2, 9));
        assert_eq!(part, expected);
    }
}
