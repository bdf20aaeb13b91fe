//! The ring ℝ[cos t, sin t] of real trigonometric polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A trigonometric polynomial `Σ aₖ cos(kt) + bₖ sin(kt)`.
///
/// `cos` holds `a₀..aₙ` and `sin` holds `b₁..bₙ`, so both have the same
/// length for `n ≥ 1` apart from the constant term. The representation is
/// canonical: the highest pair `(aₙ, bₙ)` is never `(0, 0)` and the zero
/// polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrigPoly<F> {
    cos: Vec<F>,
    sin: Vec<F>,
}

/// Exact trigonometric polynomial, the type every symbolic criterion uses.
pub type ExactPoly = TrigPoly<Rational>;
/// Binary64 trigonometric polynomial, used for numerics.
pub type FloatPoly = TrigPoly<f64>;

/// `∫₀^{2π} P(t) dt` kept as `a₀ · 2π`; the factor 2π is never multiplied out.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanIntegral<F> {
    pub a0: F,
}

impl<F: Scalar> MeanIntegral<F> {
    pub fn is_zero(&self) -> bool {
        self.a0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.a0.to_f64() * std::f64::consts::TAU
    }
}

impl<F: Scalar> TrigPoly<F> {
    /// Builds a polynomial from `a₀..aₙ` and `b₁..bₘ`, padding the shorter
    /// side and stripping trailing zero pairs.
    pub fn new(cos: Vec<F>, sin: Vec<F>) -> Self {
        let mut cos = cos;
        let mut sin = sin;
        let n = cos.len().saturating_sub(1).max(sin.len());
        cos.resize(n + 1, F::zero());
        sin.resize(n, F::zero());
        let mut p = TrigPoly { cos, sin };
        p.canonicalize();
        p
    }

    pub fn zero() -> Self {
        TrigPoly {
            cos: Vec::new(),
            sin: Vec::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c], Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// `a cos t + b sin t + c`.
    pub fn linear(a: F, b: F, c: F) -> Self {
        Self::new(vec![c, a], vec![b])
    }

    /// `cos(kt)`.
    pub fn cos_k(k: usize) -> Self {
        let mut cos = vec![F::zero(); k + 1];
        cos[k] = F::one();
        Self::new(cos, Vec::new())
    }

    /// `sin(kt)`, zero when `k = 0`.
    pub fn sin_k(k: usize) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut sin = vec![F::zero(); k];
        sin[k - 1] = F::one();
        Self::new(Vec::new(), sin)
    }

    fn canonicalize(&mut self) {
        while let Some(last) = self.cos.last() {
            let n = self.cos.len() - 1;
            let sin_zero = n == 0 || self.sin[n - 1].is_zero();
            if last.is_zero() && sin_zero {
                self.cos.pop();
                if n > 0 {
                    self.sin.pop();
                }
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cos.is_empty()
    }

    /// Largest `k` with `(aₖ, bₖ) ≠ (0, 0)`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.cos.len().checked_sub(1)
    }

    /// Nonzero constants are exactly the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    /// `aₖ`, zero beyond the degree.
    pub fn cos_coeff(&self, k: usize) -> F {
        self.cos.get(k).cloned().unwrap_or_else(F::zero)
    }

    /// `bₖ` for `k ≥ 1`, zero beyond the degree and for `k = 0`.
    pub fn sin_coeff(&self, k: usize) -> F {
        if k == 0 {
            return F::zero();
        }
        self.sin.get(k - 1).cloned().unwrap_or_else(F::zero)
    }

    pub fn cos_coeffs(&self) -> &[F] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[F] {
        &self.sin
    }

    /// `a₀`.
    pub fn constant_term(&self) -> F {
        self.cos_coeff(0)
    }

    pub fn mean_integral(&self) -> MeanIntegral<F> {
        MeanIntegral {
            a0: self.constant_term(),
        }
    }

    /// Coefficients laid out as `(a₀, a₁, b₁, …, a_len, b_len)`, zero-padded.
    pub fn coeff_vector(&self, len: usize) -> Vec<F> {
        let mut v = Vec::with_capacity(2 * len + 1);
        v.push(self.cos_coeff(0));
        for k in 1..=len {
            v.push(self.cos_coeff(k));
            v.push(self.sin_coeff(k));
        }
        v
    }

    /// Inverse of [`coeff_vector`](Self::coeff_vector).
    pub fn from_coeff_vector(v: &[F]) -> Self {
        let mut cos = Vec::with_capacity(v.len() / 2 + 1);
        let mut sin = Vec::with_capacity(v.len() / 2);
        if let Some(a0) = v.first() {
            cos.push(a0.clone());
        }
        for pair in v[1.min(v.len())..].chunks(2) {
            cos.push(pair[0].clone());
            sin.push(pair.get(1).cloned().unwrap_or_else(F::zero));
        }
        Self::new(cos, sin)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TrigPoly {
            cos: self.cos.iter().map(|a| a.clone() * c.clone()).collect(),
            sin: self.sin.iter().map(|b| b.clone() * c.clone()).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let n = match self.degree() {
            Some(n) if n > 0 => n,
            _ => return Self::zero(),
        };
        let mut cos = vec![F::zero(); n + 1];
        let mut sin = vec![F::zero(); n];
        for k in 1..=n {
            let kf = F::from_i64(k as i64);
            sin[k - 1] = -(kf.clone() * self.cos[k].clone());
            cos[k] = kf * self.sin[k - 1].clone();
        }
        Self::new(cos, sin)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `t`, converting each coefficient to binary64 first.
    /// Harmonics come from the angle-addition recurrence, so only one
    /// `sin_cos` call is made.
    pub fn eval(&self, t: f64) -> f64 {
        let (s1, c1) = t.sin_cos();
        let (mut ck, mut sk) = (1.0, 0.0);
        let mut sum = self.cos.first().map_or(0.0, Scalar::to_f64);
        for k in 1..self.cos.len() {
            (ck, sk) = (ck * c1 - sk * s1, sk * c1 + ck * s1);
            let (a, b) = (&self.cos[k], &self.sin[k - 1]);
            if !a.is_zero() {
                sum += a.to_f64() * ck;
            }
            if !b.is_zero() {
                sum += b.to_f64() * sk;
            }
        }
        sum
    }

    pub fn to_f64(&self) -> FloatPoly {
        TrigPoly {
            cos: self.cos.iter().map(Scalar::to_f64).collect(),
            sin: self.sin.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.cos
            .iter()
            .chain(self.sin.iter())
            .map(Scalar::abs_f64)
            .fold(0.0, f64::max)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let n = self.cos.len().max(other.cos.len());
        let m = self.sin.len().max(other.sin.len());
        let combine = |x: F, y: F| if negate { x - y } else { x + y };
        let cos = (0..n).map(|k| combine(self.cos_coeff(k), other.cos_coeff(k))).collect();
        let sin = (1..=m)
            .map(|k| combine(self.sin_coeff(k), other.sin_coeff(k)))
            .collect();
        Self::new(cos, sin)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (n, m) = match (self.degree(), other.degree()) {
            (Some(n), Some(m)) => (n, m),
            _ => return Self::zero(),
        };
        let top = n + m;
        let mut cos = vec![F::zero(); top + 1];
        // index 0 of `sin` collects sin(0·t) contributions, which vanish
        let mut sin = vec![F::zero(); top + 1];
        let half = F::one() / F::from_i64(2);

        let add_cos = |cos: &mut Vec<F>, k: isize, v: F| {
            let k = k.unsigned_abs();
            cos[k] = cos[k].clone() + v;
        };
        let add_sin = |sin: &mut Vec<F>, k: isize, v: F| {
            if k < 0 {
                let k = (-k) as usize;
                sin[k] = sin[k].clone() - v;
            } else {
                let k = k as usize;
                sin[k] = sin[k].clone() + v;
            }
        };

        for j in 0..=n {
            let aj = self.cos_coeff(j);
            let bj = self.sin_coeff(j);
            for k in 0..=m {
                let ck = other.cos_coeff(k);
                let dk = other.sin_coeff(k);
                let (js, ks) = (j as isize, k as isize);
                if !aj.is_zero() && !ck.is_zero() {
                    let h = aj.clone() * ck.clone() * half.clone();
                    add_cos(&mut cos, js - ks, h.clone());
                    add_cos(&mut cos, js + ks, h);
                }
                if !aj.is_zero() && !dk.is_zero() {
                    let h = aj.clone() * dk.clone() * half.clone();
                    add_sin(&mut sin, ks + js, h.clone());
                    add_sin(&mut sin, ks - js, h);
                }
                if !bj.is_zero() && !ck.is_zero() {
                    let h = bj.clone() * ck.clone() * half.clone();
                    add_sin(&mut sin, js + ks, h.clone());
                    add_sin(&mut sin, js - ks, h);
                }
                if !bj.is_zero() && !dk.is_zero() {
                    let h = bj.clone() * dk.clone() * half.clone();
                    add_cos(&mut cos, js - ks, h.clone());
                    add_cos(&mut cos, js + ks, -h);
                }
            }
        }
        sin.remove(0);
        Self::new(cos, sin)
    }
}

impl ExactPoly {
    /// Convenience constructor from small integers: `cos = [a₀, a₁, …]`, `sin = [b₁, …]`.
    pub fn from_ints(cos: &[i64], sin: &[i64]) -> Self {
        Self::new(
            cos.iter().map(|&v| Rational::from_i64(v)).collect(),
            sin.iter().map(|&v| Rational::from_i64(v)).collect(),
        )
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, F: Scalar> $tr<&'a TrigPoly<F>> for &'a TrigPoly<F> {
            type Output = TrigPoly<F>;
            fn $method(self, rhs: &'a TrigPoly<F>) -> TrigPoly<F> {
                let f: fn(&TrigPoly<F>, &TrigPoly<F>) -> TrigPoly<F> = $body;
                f(self, rhs)
            }
        }
        impl<F: Scalar> $tr<TrigPoly<F>> for TrigPoly<F> {
            type Output = TrigPoly<F>;
            fn $method(self, rhs: TrigPoly<F>) -> TrigPoly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl<F: Scalar> Neg for &TrigPoly<F> {
    type Output = TrigPoly<F>;
    fn neg(self) -> TrigPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> Neg for TrigPoly<F> {
    type Output = TrigPoly<F>;
    fn neg(self) -> TrigPoly<F> {
        -&self
    }
}

impl<F: Scalar> fmt::Display for TrigPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(String, String)> = Vec::new();
        let n = self.degree().unwrap_or(0);
        for k in (1..=n).rev() {
            let arg = if k == 1 { "t".to_string() } else { format!("{k}t") };
            for (c, name) in [(self.cos_coeff(k), "cos"), (self.sin_coeff(k), "sin")] {
                if !c.is_zero() {
                    terms.push((c.to_string(), format!("{name}({arg})")));
                }
            }
        }
        let a0 = self.constant_term();
        if !a0.is_zero() {
            terms.push((a0.to_string(), String::new()));
        }
        for (i, (c, basis)) in terms.iter().enumerate() {
            let (neg, mag) = match c.strip_prefix('-') {
                Some(m) => (true, m),
                None => (false, c.as_str()),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if basis.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{mag}*{basis}")?;
            }
        }
        Ok(())
    }
}

/// A trigonometric polynomial whose coefficient field is only known at run
/// time, as produced by the JSON reader.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTrigPoly {
    Exact(ExactPoly),
    Float(FloatPoly),
}

impl AnyTrigPoly {
    pub fn field(&self) -> &'static str {
        match self {
            AnyTrigPoly::Exact(_) => Rational::FIELD,
            AnyTrigPoly::Float(_) => f64::FIELD,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnyTrigPoly::Exact(p), AnyTrigPoly::Exact(q)) => Ok(AnyTrigPoly::Exact(p + q)),
            (AnyTrigPoly::Float(p), AnyTrigPoly::Float(q)) => Ok(AnyTrigPoly::Float(p + q)),
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnyTrigPoly::Exact(p), AnyTrigPoly::Exact(q)) => Ok(AnyTrigPoly::Exact(p * q)),
            (AnyTrigPoly::Float(p), AnyTrigPoly::Float(q)) => Ok(AnyTrigPoly::Float(p * q)),
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn to_f64(&self) -> FloatPoly {
        match self {
            AnyTrigPoly::Exact(p) => p.to_f64(),
            AnyTrigPoly::Float(p) => p.clone(),
        }
    }

    pub fn into_exact(self) -> Result<ExactPoly> {
        match self {
            AnyTrigPoly::Exact(p) => Ok(p),
            AnyTrigPoly::Float(_) => Err(Error::FieldMismatch(Rational::FIELD, f64::FIELD)),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            AnyTrigPoly::Exact(p) => p.degree(),
            AnyTrigPoly::Float(p) => p.degree(),
        }
    }
}
