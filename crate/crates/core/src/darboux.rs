//! Darboux first integrals built from invariant lines.
//!
//! For invariant lines `1 − Pᵢx` with ratios `Rᵢ = A/Pᵢ`, any nonzero real
//! `α` with `Σ αᵢ Rᵢ = 0` gives the first integral
//! `x^{α₀} Π (1 − Pᵢx)^{αᵢ}` with `α₀ = −Σ αᵢ`. The dependence is found by
//! exact elimination.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::abel::{cofactor_of_line, AbelEquation, Cofactor, InvariantLine, XPoly};
use crate::error::{Error, Result};
use crate::factorization::divides_exact;
use crate::linalg;
use crate::poincare::{integrate, DEFAULT_RTOL};
use crate::random::seeded;
use crate::scalar::{Rational, Scalar};
use crate::trig::ExactPoly;

/// Exponents of a first integral together with the curves they belong to.
#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxCertificate {
    pub alphas: Vec<Rational>,
    pub alpha0: Rational,
    pub curves: Vec<InvariantLine>,
}

/// `Rᵢ = A/Pᵢ` for each line.
pub fn curve_ratios(eq: &AbelEquation, lines: &[InvariantLine]) -> Result<Vec<ExactPoly>> {
    lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            divides_exact(l.p(), &eq.a)
                .ok_or_else(|| Error::Inconsistent(format!("curve {i} does not divide A, so it is not invariant")))
        })
        .collect()
}

/// Basis of `{α : Σ αᵢ Rᵢ = 0}`, each vector primitive over ℤ with a
/// positive first nonzero entry. Empty means the ratios are independent.
pub fn dependence_kernel(ratios: &[ExactPoly]) -> Vec<Vec<Rational>> {
    let len = ratios.iter().filter_map(ExactPoly::degree).max().unwrap_or(0);
    let columns: Vec<Vec<Rational>> = ratios.iter().map(|r| r.coeff_vector(len)).collect();
    let matrix: Vec<Vec<Rational>> = (0..2 * len + 1)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    linalg::nullspace(&matrix, ratios.len())
}

fn combination(eq: &AbelEquation, lines: &[InvariantLine], alphas: &[Rational], alpha0: &Rational) -> Result<XPoly> {
    let mut sum = XPoly::new(Vec::new());
    let terms = std::iter::once(Ok((alpha0, Cofactor::trivial(eq))))
        .chain(alphas.iter().zip(lines).map(|(a, l)| Ok((a, cofactor_of_line(eq, l)?))));
    for term in terms {
        let (a, k): (&Rational, Cofactor) = term?;
        let scaled = XPoly::new(k.to_xpoly().coeffs().iter().map(|c| c.scale(a)).collect());
        sum = &sum + &scaled;
    }
    Ok(sum)
}

/// Certificate for `x^{α₀} Π (1 − Pᵢx)^{αᵢ}`, after checking that
/// `α₀K₀ + Σ αᵢKᵢ` vanishes identically.
pub fn first_integral(eq: &AbelEquation, lines: &[InvariantLine], alphas: &[Rational]) -> Result<DarbouxCertificate> {
    if lines.is_empty() {
        return Err(Error::NotFirstIntegral(
            "at least one nontrivial curve is required".into(),
        ));
    }
    if alphas.len() != lines.len() {
        return Err(Error::InvalidArgument(format!(
            "{} exponents for {} curves",
            alphas.len(),
            lines.len()
        )));
    }
    if alphas.iter().all(|a| a.is_zero()) {
        return Err(Error::NotFirstIntegral("all exponents are zero".into()));
    }
    let alpha0 = -alphas.iter().sum::<Rational>();
    if !combination(eq, lines, alphas, &alpha0)?.is_zero() {
        return Err(Error::NotFirstIntegral(
            "cofactor combination is not identically zero".into(),
        ));
    }
    Ok(DarbouxCertificate {
        alphas: alphas.to_vec(),
        alpha0,
        curves: lines.to_vec(),
    })
}

impl DarbouxCertificate {
    /// `log|f(t, x)| = α₀ log|x| + Σ αᵢ log|1 − Pᵢ(t)x|`.
    pub fn log_abs(&self, t: f64, x: f64) -> f64 {
        let mut s = self.alpha0.to_f64() * x.abs().ln();
        for (a, l) in self.alphas.iter().zip(&self.curves) {
            s += a.to_f64() * (1.0 - l.p().eval(t) * x).abs().ln();
        }
        s
    }

    /// Largest `|log|f(t,x(t))| − log|f(0,x₀)||` along the trajectory, scaled
    /// by `max(1, |log|f(0,x₀)||)`. `None` on blow-up.
    pub fn drift(&self, eq: &AbelEquation, x0: f64, rtol: f64) -> Result<Option<f64>> {
        let traj = integrate(&eq.to_f64(), x0, 0.0, TAU, rtol)?;
        if traj.blew_up {
            return Ok(None);
        }
        let l0 = self.log_abs(0.0, x0);
        let d = traj
            .t
            .iter()
            .zip(&traj.x)
            .map(|(&t, &x)| (self.log_abs(t, x) - l0).abs())
            .fold(0.0, f64::max);
        Ok(Some(d / l0.abs().max(1.0)))
    }
}

/// Integrates `samples` random trajectories over one period and checks
/// that the logarithm of the first integral drifts by at most `tol`.
///
/// Initial values are drawn from `[−m, 2m]` with `m` the smallest
/// `|1/Pᵢ(0)|`. `x₀ = 0` and blown-up trajectories are skipped.
pub fn verify_first_integral_numeric(
    cert: &DarbouxCertificate,
    eq: &AbelEquation,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<bool> {
    let m = cert
        .curves
        .iter()
        .map(|l| 1.0 / l.p().eval(0.0).abs())
        .fold(f64::INFINITY, f64::min);
    let mut rng = seeded(seed);
    let starts: Vec<f64> = (0..samples).map(|_| rng.gen_range(-m..2.0 * m)).collect();
    let drifts = starts
        .par_iter()
        .map(|&x0| {
            if x0 == 0.0 {
                return Ok(None);
            }
            let d = cert.drift(eq, x0, DEFAULT_RTOL)?;
            if d.is_none() {
                log::warn!("trajectory from x0 = {x0} blew up; skipped");
            }
            Ok(d)
        })
        .collect::<Result<Vec<_>>>()?;
    let used: Vec<f64> = drifts.into_iter().flatten().collect();
    if used.is_empty() {
        return Err(Error::Inconclusive("every sample trajectory was skipped".into()));
    }
    Ok(used.iter().all(|&d| d <= tol))
}
