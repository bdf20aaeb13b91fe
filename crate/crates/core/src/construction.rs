//! Abel equations with two prescribed invariant lines.
//!
//! Every equation with two distinct invariant lines `1 − P₁x` and `1 − P₂x`
//! arises from a tuple `(G, Ĝ, S₁, k)` with `P₁ = G·S₁`,
//! `P₂ = G·(S₁ + kĜ)`, and
//!
//! ```text
//! A = G·S₁·(S₁ + kĜ)·(G′ + G·Ĝ′/Ĝ)
//! B = −(G·S₁)′ − (S₁ + kĜ)·(G′ + G·Ĝ′/Ĝ)
//! ```
//!
//! [`construct_two_curves`] goes forward and [`recover_params`] back.

use num_traits::{One, Zero};

use crate::abel::{is_invariant_line, AbelEquation};
use crate::error::{Error, Result};
use crate::factorization::exact::part_dividing;
use crate::factorization::{divides_exact, gcd_zero_free, is_zero_free_exact};
use crate::scalar::Rational;
use crate::trig::ExactPoly;

/// Parameters `(G, Ĝ, S₁, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamTuple {
    pub g: ExactPoly,
    pub ghat: ExactPoly,
    pub s1: ExactPoly,
    pub k: Rational,
}

/// An equation together with its two invariant lines.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCurves {
    pub eq: AbelEquation,
    pub p1: ExactPoly,
    pub p2: ExactPoly,
}

impl ParamTuple {
    pub fn new(g: ExactPoly, ghat: ExactPoly, s1: ExactPoly, k: Rational) -> Self {
        ParamTuple { g, ghat, s1, k }
    }

    /// `G = (cos t + 2)(sin t + 2)`, `Ĝ = sin t + 2`, `S₁ = sin t + 4`,
    /// `k = −1`: the equation with a degree-2 and a degree-3 limit cycle
    /// used throughout the tests and by `abel example1`.
    pub fn worked_example() -> Self {
        let cos2 = ExactPoly::from_ints(&[2, 1], &[]);
        let sin2 = ExactPoly::from_ints(&[2], &[1]);
        ParamTuple {
            g: &cos2 * &sin2,
            ghat: sin2,
            s1: ExactPoly::from_ints(&[4], &[1]),
            k: -Rational::one(),
        }
    }

    /// `S₂ = S₁ + kĜ`.
    pub fn s2(&self) -> ExactPoly {
        &self.s1 + &self.ghat.scale(&self.k)
    }

    /// Checks `k ≠ 0`, that `G`, `S₁` and `S₂` are zero-free, and that
    /// every irreducible factor of `Ĝ` divides `G`.
    pub fn validate(&self) -> Result<()> {
        if self.k.is_zero() {
            return Err(Error::InvalidParams("k = 0 makes the two curves coincide".into()));
        }
        for (name, p) in [("G", &self.g), ("S1", &self.s1), ("S1 + k*Ghat", &self.s2())] {
            if !is_zero_free_exact(p) {
                return Err(Error::InvalidParams(format!("{name} has real zeros")));
            }
        }
        let Some(dh) = self.ghat.degree() else {
            return Err(Error::InvalidParams("Ghat is zero".into()));
        };
        // Ĝ's roots lie among G's iff Ĝ divides a high enough power of G
        if dh > 0 && divides_exact(&self.ghat, &self.g.pow(dh as u32)).is_none() {
            return Err(Error::InvalidParams(
                "Ghat has an irreducible factor that does not divide G".into(),
            ));
        }
        Ok(())
    }
}

/// Builds `A`, `B`, `P₁ = G·S₁` and `P₂ = G·(S₁ + kĜ)`.
pub fn construct_two_curves(p: &ParamTuple) -> Result<TwoCurves> {
    p.validate()?;
    let t = divides_exact(&p.ghat, &(&p.g * &p.ghat.derivative()))
        .ok_or_else(|| Error::InvalidParams("Ghat does not divide G*Ghat'".into()))?;
    let s = &p.g.derivative() + &t;
    let s2 = p.s2();
    let p1 = &p.g * &p.s1;
    let p2 = &p.g * &s2;
    let a = &(&p1 * &s2) * &s;
    let b = &(-p1.derivative()) - &(&s2 * &s);
    let eq = AbelEquation::new(a, b);
    debug_assert!(eq.invariance_residual(&p1).is_zero());
    debug_assert!(eq.invariance_residual(&p2).is_zero());
    Ok(TwoCurves { eq, p1, p2 })
}

/// Recovers `(G, Ĝ, S₁, k)` from two distinct invariant lines of `eq`.
///
/// `G` is `gcd(P₁, P₂)`, so a factor shared by `S₁` and `S₂` moves into
/// it. `G` and `Ĝ` come out with constant term 1; `S₁` and `k` absorb the
/// corresponding units, so [`construct_two_curves`] on the result
/// reproduces `eq`, `P₁` and `P₂` exactly.
pub fn recover_params(p1: &ExactPoly, p2: &ExactPoly, eq: &AbelEquation) -> Result<ParamTuple> {
    if p1 == p2 {
        return Err(Error::SameCurve);
    }
    for p in [p1, p2] {
        if !is_invariant_line(eq, p)? {
            return Err(Error::NotInvariant);
        }
    }
    let g = gcd_zero_free(p1, p2)?;
    let quotient =
        |p: &ExactPoly| divides_exact(&g, p).ok_or_else(|| Error::Inconsistent("gcd does not divide input".into()));
    let s1 = quotient(p1)?;
    let s2 = quotient(p2)?;
    let d = &s2 - &s1;
    let ghat = part_dividing(&d, &g)?;
    let k = divides_exact(&ghat, &d)
        .filter(|k| k.degree() == Some(0))
        .ok_or_else(|| {
            Error::Inconsistent(
                "(S2 - S1)/Ghat is not constant; the curves are not invariant lines of one equation".into(),
            )
        })?
        .constant_term();
    Ok(ParamTuple { g, ghat, s1, k })
}

/// An equation together with three invariant lines.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeCurves {
    pub eq: AbelEquation,
    pub lines: [ExactPoly; 3],
}

/// A family with three invariant lines of equal degree:
/// `P₁ = H·(k₂ − 2k₃H)`, `P₂ = P₁ + k₂H`, `P₃ = P₁ + k₃H²`.
///
/// Writing `y = 1/x`, every difference `zᵢ = Pᵢ − P₁` of solutions must
/// satisfy `zᵢ′Pᵢ/zᵢ = −(P₁′ + B)`. With `z₂ = k₂H` and `z₃ = k₃H²` this
/// reads `P₂ = 2P₃`, which fixes `P₁` as above. Three lines force a
/// first integral, so these equations always have a center.
pub fn construct_three_curves(h: &ExactPoly, k2: &Rational, k3: &Rational) -> Result<ThreeCurves> {
    if k2.is_zero() || k3.is_zero() {
        return Err(Error::InvalidParams("k2 and k3 must be nonzero".into()));
    }
    if h.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidParams("H must have degree >= 1".into()));
    }
    let p1 = h * &(&ExactPoly::constant(k2.clone()) - &h.scale(&(k3 * Rational::from_integer(2.into()))));
    let p2 = &p1 + &h.scale(k2);
    let p3 = &p1 + &(h * h).scale(k3);
    for (name, p) in [("P1", &p1), ("P2", &p2), ("P3", &p3)] {
        if !is_zero_free_exact(p) {
            return Err(Error::InvalidParams(format!("{name} has real zeros")));
        }
    }
    let c = divides_exact(h, &(&p2 * &h.derivative()))
        .ok_or_else(|| Error::Inconsistent("H does not divide P2*H'".into()))?;
    let b = &(-p1.derivative()) - &c;
    let a = -&(&(&p1 * &p1.derivative()) + &(&b * &p1));
    let eq = AbelEquation::new(a, b);
    debug_assert!([&p1, &p2, &p3].iter().all(|p| eq.invariance_residual(p).is_zero()));
    Ok(ThreeCurves {
        eq,
        lines: [p1, p2, p3],
    })
}
