//! The embedding ℂ[cos t, sin t] ≅ ℂ[z, z⁻¹] with `z = e^{it}`.
//!
//! `aₖ cos(kt) + bₖ sin(kt)` becomes `cₖ zᵏ + c₋ₖ z⁻ᵏ` with
//! `cₖ = (aₖ − i·bₖ)/2` and `c₋ₖ = conj(cₖ)`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::trig::TrigPoly;

/// A Laurent polynomial `Σ_{k=-n}^{n} cₖ zᵏ` with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<F> {
    half: usize,
    coeffs: Vec<Complex<F>>,
}

impl<F: Scalar> LaurentPoly<F> {
    /// Coefficients `c₋ₙ..cₙ`; the length must be odd.
    pub fn from_coeffs(coeffs: Vec<Complex<F>>) -> Self {
        assert!(coeffs.len() % 2 == 1, "Laurent coefficient vector must have odd length");
        LaurentPoly {
            half: coeffs.len() / 2,
            coeffs,
        }
    }

    pub fn half_degree(&self) -> usize {
        self.half
    }

    /// `c_k`, zero outside `-n..=n`.
    pub fn coeff(&self, k: isize) -> Complex<F> {
        let idx = k + self.half as isize;
        if idx < 0 {
            return Complex::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(Complex::zero)
    }

    /// `c₋ₙ..cₙ`, which are also the ascending coefficients of `zⁿ·L(z)`.
    pub fn coeffs(&self) -> &[Complex<F>] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        LaurentPoly {
            half: self.half + other.half,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &Complex<F>) -> Self {
        LaurentPoly {
            half: self.half,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Maps back to a real trigonometric polynomial. Fails unless
    /// `c₋ₖ = conj(cₖ)` for every `k` (so `c₀` is real).
    pub fn to_trig(&self) -> Result<TrigPoly<F>> {
        let n = self.half;
        let two = F::from_i64(2);
        let mut cos = Vec::with_capacity(n + 1);
        let mut sin = Vec::with_capacity(n);
        for k in 0..=n {
            let ck = self.coeff(k as isize);
            let cmk = self.coeff(-(k as isize));
            if cmk != ck.conj() {
                return Err(Error::NotRealRepresentable(k));
            }
            if k == 0 {
                cos.push(ck.re);
            } else {
                cos.push(two.clone() * ck.re.clone());
                sin.push(-(two.clone() * ck.im));
            }
        }
        Ok(TrigPoly::new(cos, sin))
    }
}

impl<F: Scalar> TrigPoly<F> {
    /// Laurent image; the zero polynomial maps to the single coefficient 0.
    pub fn to_laurent(&self) -> LaurentPoly<F> {
        let n = self.degree().unwrap_or(0);
        let half = F::one() / F::from_i64(2);
        let mut coeffs = vec![Complex::zero(); 2 * n + 1];
        coeffs[n] = Complex::new(self.constant_term(), F::zero());
        for k in 1..=n {
            let re = self.cos_coeff(k) * half.clone();
            let im = -(self.sin_coeff(k) * half.clone());
            coeffs[n + k] = Complex::new(re.clone(), im.clone());
            coeffs[n - k] = Complex::new(re, -im);
        }
        LaurentPoly { half: n, coeffs }
    }
}

impl<F: Scalar> One for LaurentPoly<F> {
    fn one() -> Self {
        LaurentPoly {
            half: 0,
            coeffs: vec![Complex::one()],
        }
    }
}

impl<F: Scalar> std::ops::Mul for LaurentPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        LaurentPoly::mul(&self, &rhs)
    }
}
