//! The Abel equation `x′ = A(t)x³ + B(t)x²` and its invariant lines.
//!
//! An invariant line is a curve `1 − P(t)x = 0` with `P` zero-free whose
//! zero set is a union of trajectories, so `x = 1/P(t)` is a periodic
//! solution. Everything in this module is exact.

use crate::error::{Error, Result};
use crate::factorization::{common_irreducible_factor, is_zero_free_exact};
use crate::scalar::Rational;
use crate::trig::{ExactPoly, FloatPoly};
use num_traits::Zero;

/// `x′ = A(t)x³ + B(t)x²` with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelEquation {
    pub a: ExactPoly,
    pub b: ExactPoly,
}

impl AbelEquation {
    pub fn new(a: ExactPoly, b: ExactPoly) -> Self {
        AbelEquation { a, b }
    }

    /// `A = 0` turns the equation into `x′ = B(t)x²`, which is integrable
    /// by separation of variables.
    pub fn is_degenerate(&self) -> bool {
        self.a.is_zero()
    }

    /// `P·P′ + P·B + A`, which vanishes exactly when `1 − Px = 0` is
    /// invariant.
    pub fn invariance_residual(&self, p: &ExactPoly) -> ExactPoly {
        &(&(p * &p.derivative()) + &(p * &self.b)) + &self.a
    }

    /// The vector field `∂t + (Ax³ + Bx²)∂x` applied to `f`.
    pub fn apply_field(&self, f: &XPoly) -> XPoly {
        let dt = XPoly::new(f.coeffs.iter().map(ExactPoly::derivative).collect());
        let rhs = XPoly::new(vec![
            ExactPoly::zero(),
            ExactPoly::zero(),
            self.b.clone(),
            self.a.clone(),
        ]);
        &dt + &(&rhs * &f.dx())
    }

    pub fn to_f64(&self) -> FloatEquation {
        FloatEquation {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
        }
    }
}

/// Binary64 copy of an equation for numerical integration.
#[derive(Clone, Debug)]
pub struct FloatEquation {
    pub a: FloatPoly,
    pub b: FloatPoly,
}

impl FloatEquation {
    /// `A(t)x³ + B(t)x²`.
    pub fn rhs(&self, t: f64, x: f64) -> f64 {
        let x2 = x * x;
        self.a.eval(t) * x2 * x + self.b.eval(t) * x2
    }

    /// The equation in reversed time `s = −t`, whose return map is the
    /// inverse of this one's.
    pub fn reversed(&self) -> FloatEquation {
        let flip = |p: &FloatPoly| FloatPoly::new(p.cos_coeffs().iter().map(|c| -c).collect(), p.sin_coeffs().to_vec());
        FloatEquation {
            a: flip(&self.a),
            b: flip(&self.b),
        }
    }
}

/// A polynomial in `x` whose coefficients are trigonometric polynomials,
/// stored in ascending powers of `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly {
    coeffs: Vec<ExactPoly>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<ExactPoly>) -> Self {
        while coeffs.last().is_some_and(ExactPoly::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    /// `1 − P(t)x`.
    pub fn line(p: &ExactPoly) -> Self {
        XPoly::new(vec![ExactPoly::one(), -p])
    }

    pub fn coeffs(&self) -> &[ExactPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `∂/∂x`.
    pub fn dx(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&Rational::from_integer((j as i64).into())))
            .collect();
        XPoly::new(c)
    }
}

impl std::ops::Add for &XPoly {
    type Output = XPoly;
    fn add(self, other: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = ExactPoly::zero();
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        XPoly::new(c)
    }
}

impl std::ops::Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, other: &XPoly) -> XPoly {
        let neg = XPoly::new(other.coeffs.iter().map(|c| -c).collect());
        self + &neg
    }
}

impl std::ops::Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, other: &XPoly) -> XPoly {
        if self.is_zero() || other.is_zero() {
            return XPoly::new(Vec::new());
        }
        let mut c = vec![ExactPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        XPoly::new(c)
    }
}

/// A zero-free `P` of degree at least one.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantLine(ExactPoly);

impl InvariantLine {
    pub fn new(p: ExactPoly) -> Result<Self> {
        if !is_zero_free_exact(&p) {
            return Err(Error::NotZeroFree("P"));
        }
        if p.is_unit() {
            return Err(Error::ConstantLine);
        }
        Ok(InvariantLine(p))
    }

    pub fn p(&self) -> &ExactPoly {
        &self.0
    }

    pub fn into_inner(self) -> ExactPoly {
        self.0
    }
}

/// `K(t, x) = k2·x² + k1·x + k0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cofactor {
    pub k2: ExactPoly,
    pub k1: ExactPoly,
    pub k0: ExactPoly,
}

impl Cofactor {
    /// Cofactor `Ax² + Bx` of the trivial curve `x = 0`.
    pub fn trivial(eq: &AbelEquation) -> Self {
        Cofactor {
            k2: eq.a.clone(),
            k1: eq.b.clone(),
            k0: ExactPoly::zero(),
        }
    }

    pub fn to_xpoly(&self) -> XPoly {
        XPoly::new(vec![self.k0.clone(), self.k1.clone(), self.k2.clone()])
    }
}

/// Whether `1 − P(t)x = 0` is invariant. Constant `P` is accepted here;
/// `P` with real zeros is rejected.
pub fn is_invariant_line(eq: &AbelEquation, p: &ExactPoly) -> Result<bool> {
    if !is_zero_free_exact(p) {
        return Err(Error::NotZeroFree("P"));
    }
    Ok(eq.invariance_residual(p).is_zero())
}

/// Whether `x = Q/P` solves the equation, checked on the cleared form
/// `P(Q′P − QP′) − AQ³ − BPQ² = 0`.
pub fn verify_rational_solution(eq: &AbelEquation, q: &ExactPoly, p: &ExactPoly) -> Result<bool> {
    if common_irreducible_factor(p, q)? {
        return Err(Error::NotCoprime("Q", "P"));
    }
    let q2 = q * q;
    let lhs = p * &(&(&q.derivative() * p) - &(q * &p.derivative()));
    let rhs = &(&eq.a * &(&q2 * q)) + &(&(&eq.b * p) * &q2);
    Ok((&lhs - &rhs).is_zero())
}

/// The cofactor `Ax² − P′x` of an invariant line.
pub fn cofactor_of_line(eq: &AbelEquation, line: &InvariantLine) -> Result<Cofactor> {
    if !eq.invariance_residual(line.p()).is_zero() {
        return Err(Error::NotInvariant);
    }
    Ok(Cofactor {
        k2: eq.a.clone(),
        k1: -line.p().derivative(),
        k0: ExactPoly::zero(),
    })
}

/// `𝒳f − K·f` for `f = 1 − Px` and `K = Ax² − P′x`. It equals
/// `−(PB + A + PP′)x²`, so it vanishes exactly on invariant lines.
pub fn cofactor_identity_residual(eq: &AbelEquation, p: &ExactPoly) -> XPoly {
    let f = XPoly::line(p);
    let k = Cofactor {
        k2: eq.a.clone(),
        k1: -p.derivative(),
        k0: ExactPoly::zero(),
    };
    &eq.apply_field(&f) - &(&k.to_xpoly() * &f)
}

/// The equation `A = P·R`, `B = −P′ − R` for which `1 − Px = 0` is
/// invariant.
pub fn from_invariant(line: &InvariantLine, r: &ExactPoly) -> AbelEquation {
    let p = line.p();
    AbelEquation {
        a: p * r,
        b: &(-p.derivative()) - r,
    }
}

/// `deg P₁ + deg P₂ = deg A` for two distinct invariant lines.
pub fn degree_identity(eq: &AbelEquation, p1: &ExactPoly, p2: &ExactPoly) -> Result<bool> {
    if p1 == p2 {
        return Err(Error::SameCurve);
    }
    for p in [p1, p2] {
        if !is_invariant_line(eq, p)? {
            return Err(Error::NotInvariant);
        }
    }
    Ok(match (p1.degree(), p2.degree(), eq.a.degree()) {
        (Some(d1), Some(d2), Some(da)) => d1 + d2 == da,
        _ => false,
    })
}

/// Upper bound on the number of rational limit cycles: 2 if `deg A` is odd
/// or `deg A < 2·deg B`, and `deg A + 1` otherwise.
pub fn rational_cycle_bound(eq: &AbelEquation) -> Result<usize> {
    let da = eq.a.degree().ok_or(Error::DegenerateA)?;
    let b_dominates = eq.b.degree().is_some_and(|db| da < 2 * db);
    Ok(if da % 2 == 1 || b_dominates { 2 } else { da + 1 })
}

/// A nonzero mean of `B` rules out a center at `x = 0`, so periodic
/// solutions near it are isolated.
pub fn center_obstruction(eq: &AbelEquation) -> bool {
    !eq.b.constant_term().is_zero()
}
