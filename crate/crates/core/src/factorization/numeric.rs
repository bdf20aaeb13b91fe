//! Numeric factorization into irreducibles `a cos t + b sin t + c`.
//!
//! A degree-`n` polynomial `P` maps to `q(z) = zⁿ·L(z)`, a complex polynomial
//! of degree `2n` whose root set is closed under `ζ ↦ 1/ζ̄`. Each root off the
//! unit circle pairs with its reflection; roots on the circle (the real
//! zeros of `P`) are paired in order of increasing argument, which picks one
//! representative of the non-unique factorization. Each pair spans a
//! conjugate-symmetric quadratic, i.e. one real linear factor.
//!
//! Results are validated only by re-expansion. Nothing in this module
//! certifies divisibility; see [`super::exact`] for that.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::{Rational, Scalar};
use crate::trig::{FloatPoly, TrigPoly};

use super::roots::roots;

/// Unit-circle decision band and residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// The irreducible element `a cos t + b sin t + c`, `(a, b) ≠ (0, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactor<F> {
    pub a: F,
    pub b: F,
    pub c: F,
}

impl<F: Scalar> LinearFactor<F> {
    pub fn new(a: F, b: F, c: F) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidArgument("linear factor needs (a, b) != (0, 0)".into()));
        }
        Ok(LinearFactor { a, b, c })
    }

    pub fn to_trig(&self) -> TrigPoly<F> {
        TrigPoly::linear(self.a.clone(), self.b.clone(), self.c.clone())
    }

    /// `c² > a² + b²`, equivalently no real zeros.
    pub fn is_zero_free(&self) -> bool {
        let lhs = self.c.clone() * self.c.clone();
        let rhs = self.a.clone() * self.a.clone() + self.b.clone() * self.b.clone();
        lhs > rhs
    }
}

impl LinearFactor<Rational> {
    /// Scaled so the first nonzero of `(a, b)` equals 1.
    pub fn normalized(&self) -> Self {
        let lead = if self.a.is_zero() {
            self.b.clone()
        } else {
            self.a.clone()
        };
        LinearFactor {
            a: self.a.clone() / lead.clone(),
            b: self.b.clone() / lead.clone(),
            c: self.c.clone() / lead,
        }
    }

    pub fn to_f64(&self) -> LinearFactor<f64> {
        LinearFactor {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
            c: self.c.to_f64(),
        }
    }
}

impl LinearFactor<f64> {
    /// Scaled so `a² + b² = 1` and `c > 0`; when `c` vanishes, the first
    /// nonzero of `(a, b)` is made positive instead.
    pub fn normalized(&self) -> Self {
        let norm = self.a.hypot(self.b);
        let (a, b, c) = (self.a / norm, self.b / norm, self.c / norm);
        let flip = if c.abs() > 1e-12 {
            c < 0.0
        } else if a.abs() > 1e-12 {
            a < 0.0
        } else {
            b < 0.0
        };
        if flip {
            LinearFactor { a: -a, b: -b, c: -c }
        } else {
            LinearFactor { a, b, c }
        }
    }

    /// Largest coefficient difference after normalizing both sides.
    pub fn distance(&self, other: &Self) -> f64 {
        let x = self.normalized();
        let y = other.normalized();
        (x.a - y.a).abs().max((x.b - y.b).abs()).max((x.c - y.c).abs())
    }
}

/// `P = unit · Π factors`, with the re-expansion error.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: f64,
    pub factors: Vec<LinearFactor<f64>>,
    pub residual: f64,
}

impl Factorization {
    pub fn expand(&self) -> FloatPoly {
        self.factors
            .iter()
            .fold(FloatPoly::constant(self.unit), |acc, f| &acc * &f.to_trig())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum PairKind {
    Reflected,
    OnCircle,
}

#[derive(Clone, Copy, Debug)]
struct RootPair {
    first: Complex64,
    second: Complex64,
    kind: PairKind,
}

fn arg_0_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn laurent_roots(p: &FloatPoly) -> Result<Vec<Complex64>> {
    let q = p.to_laurent();
    roots(q.coeffs()).ok_or(Error::RootsDidNotConverge)
}

fn root_pairs(p: &FloatPoly, band: f64) -> Result<Vec<RootPair>> {
    let zs = laurent_roots(p)?;
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    let mut circle = Vec::new();
    for z in zs {
        let r = z.norm();
        if r < 1.0 - band {
            inside.push(z);
        } else if r > 1.0 + band {
            outside.push(z);
        } else {
            circle.push(z);
        }
    }
    if inside.len() != outside.len() || circle.len() % 2 == 1 {
        return Err(Error::BoundaryUndecidable { band });
    }

    let mut pairs = Vec::with_capacity(inside.len() + circle.len() / 2);
    for z in inside {
        let target = z.conj().inv();
        let (idx, _) = outside
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (w - target).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("counts checked above");
        let w = outside.swap_remove(idx);
        // average the two estimates of the same reflected root
        let first = (z + w.conj().inv()) * 0.5;
        pairs.push(RootPair {
            first,
            second: first.conj().inv(),
            kind: PairKind::Reflected,
        });
    }

    circle.sort_by(|x, y| arg_0_2pi(*x).total_cmp(&arg_0_2pi(*y)));
    for chunk in circle.chunks(2) {
        pairs.push(RootPair {
            first: chunk[0],
            second: chunk[1],
            kind: PairKind::OnCircle,
        });
    }
    Ok(pairs)
}

fn linear_from_pair(pair: &RootPair) -> LinearFactor<f64> {
    let raw = match pair.kind {
        PairKind::Reflected => {
            let z = pair.first;
            let r = z.norm();
            LinearFactor {
                a: -z.re / r,
                b: -z.im / r,
                c: (1.0 + r * r) / (2.0 * r),
            }
        }
        PairKind::OnCircle => {
            let alpha = arg_0_2pi(pair.first);
            let beta = arg_0_2pi(pair.second);
            let theta = 0.5 * (alpha + beta);
            let delta = 0.5 * (alpha - beta);
            LinearFactor {
                a: theta.cos(),
                b: theta.sin(),
                c: -delta.cos(),
            }
        }
    };
    raw.normalized()
}

fn leading_ratio(p: &FloatPoly, f: &FloatPoly) -> f64 {
    let n = p.degree().unwrap_or(0);
    let (pa, pb) = (p.cos_coeff(n), p.sin_coeff(n));
    if pa.abs() >= pb.abs() {
        pa / f.cos_coeff(n)
    } else {
        pb / f.sin_coeff(n)
    }
}

fn max_coeff_error(p: &FloatPoly, q: &FloatPoly) -> f64 {
    (p - q).max_abs_coeff()
}

fn nontrivial_f64<F: Scalar>(p: &TrigPoly<F>) -> Result<FloatPoly> {
    match p.degree() {
        None => Err(Error::Trivial("P")),
        Some(0) => Err(Error::Trivial("P")),
        Some(_) => Ok(p.to_f64()),
    }
}

/// Factors `P` into `deg P` real linear factors times a unit.
///
/// `tol` is both the width of the band around the unit circle inside which
/// roots are treated as real zeros and the bound on the re-expansion
/// residual (relative to the largest coefficient of `P` when that exceeds 1).
pub fn factor<F: Scalar>(p: &TrigPoly<F>, tol: f64) -> Result<Factorization> {
    let pf = nontrivial_f64(p)?;
    let factors: Vec<LinearFactor<f64>> = root_pairs(&pf, tol)?.iter().map(linear_from_pair).collect();
    let product = factors.iter().fold(FloatPoly::one(), |acc, f| &acc * &f.to_trig());
    let unit = leading_ratio(&pf, &product);
    let residual = max_coeff_error(&pf, &product.scale(&unit));
    let scale = pf.max_abs_coeff().max(1.0);
    if !(residual <= tol * scale) {
        return Err(Error::FactorizationFailed { residual, tol });
    }
    Ok(Factorization {
        unit,
        factors,
        residual,
    })
}

/// Numeric zero test: every root of `q(z)` must sit more than `tol` away
/// from the unit circle. Roots that sit on the circle to working precision
/// are real zeros; roots in between are undecidable.
///
/// Exact inputs have a root-free decision in
/// [`is_zero_free_exact`](super::is_zero_free_exact).
pub fn is_zero_free<F: Scalar>(p: &TrigPoly<F>, tol: f64) -> Result<bool> {
    let pf = match p.degree() {
        None => return Ok(false),
        Some(0) => return Ok(true),
        Some(_) => p.to_f64(),
    };
    let on_circle = 1e-11_f64.min(tol / 100.0);
    let zs = laurent_roots(&pf)?;
    let dist: Vec<f64> = zs.iter().map(|z| (z.norm() - 1.0).abs()).collect();
    if dist.iter().any(|&d| d <= on_circle) {
        return Ok(false);
    }
    if dist.iter().any(|&d| d <= tol) {
        return Err(Error::BoundaryUndecidable { band: tol });
    }
    Ok(true)
}

/// The complex element `α sin t + β cos t + γ` of ℂ[cos t, sin t].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexLinearFactor {
    pub sin: Complex64,
    pub cos: Complex64,
    pub constant: Complex64,
}

impl ComplexLinearFactor {
    /// `z − ζ = cos t + i sin t − ζ`.
    fn z_form(root: Complex64) -> Self {
        ComplexLinearFactor {
            sin: Complex64::i(),
            cos: Complex64::new(1.0, 0.0),
            constant: -root,
        }
    }

    /// `1 − ζ z⁻¹ = 1 − ζ (cos t − i sin t)`.
    fn inverse_form(root: Complex64) -> Self {
        ComplexLinearFactor {
            sin: Complex64::i() * root,
            cos: -root,
            constant: Complex64::new(1.0, 0.0),
        }
    }

    /// Coefficients `(c₋₁, c₀, c₁)` of the Laurent image.
    pub fn laurent(&self) -> [Complex64; 3] {
        let half_i = Complex64::new(0.0, 0.5);
        // sin t = (z − z⁻¹)/(2i) = −(i/2) z + (i/2) z⁻¹
        let c1 = self.cos * 0.5 - self.sin * half_i;
        let cm1 = self.cos * 0.5 + self.sin * half_i;
        [cm1, self.constant, c1]
    }

    /// The single root `ζ` when this element is a unit multiple of `z − ζ`,
    /// `None` when it is reducible (two roots) or a unit.
    pub fn root(&self) -> Option<Complex64> {
        let [cm1, c0, c1] = self.laurent();
        let scale = cm1.norm().max(c0.norm()).max(c1.norm());
        let tiny = 1e-12 * scale;
        match (c1.norm() <= tiny, cm1.norm() <= tiny) {
            (false, true) => Some(-c0 / c1),
            (true, false) if c0.norm() > tiny => Some(-cm1 / c0),
            _ => None,
        }
    }

    /// Equal up to units of ℂ[cos t, sin t] (nonzero constants times powers of `e^{it}`).
    pub fn same_up_to_unit(&self, other: &Self, tol: f64) -> bool {
        match (self.root(), other.root()) {
            (Some(x), Some(y)) => (x - y).norm() <= tol,
            _ => false,
        }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.sin * t.sin() + self.cos * t.cos() + self.constant
    }
}

/// `P = unit · Π factors` over ℂ.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexFactorization {
    pub unit: Complex64,
    pub factors: Vec<ComplexLinearFactor>,
    pub residual: f64,
}

/// Factors `P` over ℂ into `2·deg P` irreducibles, one per root of `q(z)`.
///
/// Each real linear factor splits as `(z − ζ₁)(1 − ζ₂ z⁻¹)` times a
/// constant, where `ζ₁` is the root inside the circle (or the smaller
/// argument on it).
pub fn complex_factors<F: Scalar>(p: &TrigPoly<F>, tol: f64) -> Result<ComplexFactorization> {
    let pf = nontrivial_f64(p)?;
    let pairs = root_pairs(&pf, tol)?;
    let factors: Vec<ComplexLinearFactor> = pairs
        .iter()
        .flat_map(|pr| {
            [
                ComplexLinearFactor::z_form(pr.first),
                ComplexLinearFactor::inverse_form(pr.second),
            ]
        })
        .collect();
    let product = factors.iter().fold(
        LaurentPoly::<f64>::from_coeffs(vec![Complex64::new(1.0, 0.0)]),
        |acc, f| acc.mul(&LaurentPoly::from_coeffs(f.laurent().to_vec())),
    );
    let target = pf.to_laurent();
    let n = target.half_degree() as isize;
    let unit = target.coeff(n) / product.coeff(n);
    let residual = (-n..=n)
        .map(|k| (target.coeff(k) - product.coeff(k) * unit).norm())
        .chain((n + 1..=product.half_degree() as isize).map(|k| (product.coeff(k) * unit).norm()))
        .fold(0.0, f64::max);
    let scale = pf.max_abs_coeff().max(1.0);
    if !(residual <= tol * scale) {
        return Err(Error::FactorizationFailed { residual, tol });
    }
    Ok(ComplexFactorization {
        unit,
        factors,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::trig::ExactPoly;
    use std::f64::consts::SQRT_2;

    fn assert_factor_set(got: &[LinearFactor<f64>], want: &[LinearFactor<f64>], tol: f64) {
        let mut got = got.to_vec();
        for w in want {
            let (i, d) = got
                .iter()
                .enumerate()
                .map(|(i, g)| (i, g.distance(w)))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .expect("missing factor");
            assert!(d <= tol, "factor {w:?} not recovered (distance {d})");
            got.remove(i);
        }
        assert!(got.is_empty());
    }

    #[test]
    fn recovers_product_of_two() {
        let p = &ExactPoly::from_ints(&[2, 1], &[]) * &ExactPoly::from_ints(&[2], &[1]);
        let f = factor(&p, DEFAULT_TOL).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.residual <= 1e-9);
        assert_factor_set(
            &f.factors,
            &[
                LinearFactor { a: 1.0, b: 0.0, c: 2.0 },
                LinearFactor { a: 0.0, b: 1.0, c: 2.0 },
            ],
            1e-9,
        );
        assert!((f.expand() - p.to_f64()).max_abs_coeff() < 1e-9);
    }

    #[test]
    fn irreducible_input_is_returned_unchanged() {
        let p = FloatPoly::linear(0.6, 0.8, 3.0);
        let f = factor(&p, DEFAULT_TOL).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert!((f.unit - 1.0).abs() < 1e-12);
        assert!(f.factors[0].distance(&LinearFactor { a: 0.6, b: 0.8, c: 3.0 }) < 1e-12);
    }

    #[test]
    fn factors_with_real_zeros() {
        // sin t · (cos t + 2) · (√2 sin t − 1)
        let p = &(&FloatPoly::new(vec![0.0], vec![1.0]) * &FloatPoly::linear(1.0, 0.0, 2.0))
            * &FloatPoly::linear(0.0, SQRT_2, -1.0);
        let f = factor(&p, DEFAULT_TOL).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(f.residual < 1e-12);
        assert!(f.factors.iter().filter(|x| x.is_zero_free()).count() == 1);
    }

    #[test]
    fn rejects_units_and_zero() {
        assert!(matches!(factor(&ExactPoly::one(), 1e-9), Err(Error::Trivial(_))));
        assert!(matches!(factor(&ExactPoly::zero(), 1e-9), Err(Error::Trivial(_))));
    }

    #[test]
    fn numeric_zero_free_examples() {
        let c2 = ExactPoly::from_ints(&[2, 1], &[]);
        let s2 = ExactPoly::from_ints(&[2], &[1]);
        let s4 = ExactPoly::from_ints(&[4], &[1]);
        assert_eq!(is_zero_free(&c2, DEFAULT_TOL), Ok(true));
        assert_eq!(is_zero_free(&ExactPoly::from_ints(&[0], &[1]), DEFAULT_TOL), Ok(false));
        assert_eq!(is_zero_free(&(&(&c2 * &s2) * &s4), DEFAULT_TOL), Ok(true));
        // double zero at t = π
        assert_eq!(is_zero_free(&FloatPoly::linear(1.0, 0.0, 1.0), DEFAULT_TOL), Ok(false));
        assert_eq!(is_zero_free(&FloatPoly::linear(1.0, 0.0, 1.001), DEFAULT_TOL), Ok(true));
    }

    #[test]
    fn exact_linear_factor_test() {
        let f = LinearFactor::new(rat(3, 1), rat(4, 1), rat(5, 1)).unwrap();
        assert!(!f.is_zero_free());
        let g = LinearFactor::new(rat(3, 1), rat(4, 1), rat(51, 10)).unwrap();
        assert!(g.is_zero_free());
        assert_eq!(g.normalized().a, rat(1, 1));
        assert!(LinearFactor::new(rat(0, 1), rat(0, 1), rat(1, 1)).is_err());
    }

    #[test]
    fn complex_factors_of_cos_plus_two() {
        let p = ExactPoly::from_ints(&[2, 1], &[]);
        let cf = complex_factors(&p, DEFAULT_TOL).unwrap();
        assert_eq!(cf.factors.len(), 2);
        assert!(cf.residual < 1e-12);
        let mut roots: Vec<f64> = cf.factors.iter().map(|f| f.root().unwrap().re).collect();
        roots.sort_by(f64::total_cmp);
        // roots of z² + 4z + 1
        assert!((roots[0] - (-2.0 - 3f64.sqrt())).abs() < 1e-12);
        assert!((roots[1] - (-2.0 + 3f64.sqrt())).abs() < 1e-12);
        for t in [0.0, 1.0, 2.5] {
            let prod = cf.factors.iter().fold(cf.unit, |acc, f| acc * f.eval(t));
            assert!((prod - Complex64::new(p.eval(t), 0.0)).norm() < 1e-12);
        }
    }
}
