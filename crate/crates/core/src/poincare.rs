//! Numerical Poincaré map `x₀ ↦ x(2π)` and limit-cycle scan.
//!
//! Integration uses the Dormand–Prince 5(4) pair with per-step error
//! control. Abel equations escape to infinity in finite time for large
//! `|x|`, so trajectories are cut at [`BLOW_UP`] and reported as such.

use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::abel::{rational_cycle_bound, AbelEquation, FloatEquation};
use crate::error::{Error, Result};
use crate::trig::ExactPoly;

pub const BLOW_UP: f64 = 1e6;
pub const MIN_STEP: f64 = 1e-13;
pub const DEFAULT_RTOL: f64 = 1e-10;
pub const DEFAULT_TOL: f64 = 1e-9;
/// Step for the central-difference multiplier.
pub const DIFF_STEP: f64 = 1e-6;
const ATOL: f64 = 1e-16;
/// Multipliers within this distance of 1 are reported as neutral.
const NEUTRAL_BAND: f64 = 1e-3;

/// Accepted steps of one integration run.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub blew_up: bool,
}

impl Trajectory {
    pub fn last(&self) -> Option<f64> {
        if self.blew_up {
            None
        } else {
            self.x.last().copied()
        }
    }

    pub fn steps(&self) -> usize {
        self.t.len() - 1
    }

    pub fn max_abs(&self) -> f64 {
        self.x.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

// Dormand–Prince tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Accepted steps of an `N`-dimensional run; blow-up is judged on the
/// first component only.
struct Run<const N: usize> {
    t: Vec<f64>,
    y: Vec<[f64; N]>,
    blew_up: bool,
}

fn dopri<const N: usize>(
    rhs: impl Fn(f64, &[f64; N]) -> [f64; N],
    y0: [f64; N],
    t0: f64,
    t1: f64,
    rtol: f64,
) -> Result<Run<N>> {
    let mut run = Run {
        t: vec![t0],
        y: vec![y0],
        blew_up: false,
    };
    let (mut t, mut y) = (t0, y0);
    let mut h = ((t1 - t0) / 64.0).min(0.05 / (1.0 + y0[0].abs()));
    let mut k = [[0.0; N]; 7];
    k[0] = rhs(t, &y);
    let combine = |y: &[f64; N], k: &[[f64; N]; 7], w: &[f64], h: f64| {
        let mut out = *y;
        for (i, o) in out.iter_mut().enumerate() {
            *o += h * w.iter().zip(k.iter()).map(|(wj, kj)| wj * kj[i]).sum::<f64>();
        }
        out
    };
    while t < t1 {
        if t + h > t1 {
            h = t1 - t;
        }
        for s in 1..7 {
            let ys = combine(&y, &k, &A[s][..s], h);
            k[s] = rhs(t + C[s] * h, &ys);
        }
        let y5 = combine(&y, &k, &B5, h);
        let y4 = combine(&y, &k, &B4, h);
        let err = (0..N)
            .map(|i| (y5[i] - y4[i]).abs() / (ATOL + rtol * y[i].abs().max(y5[i].abs())))
            .fold(0.0, f64::max);
        if !y5.iter().all(|v| v.is_finite()) || !err.is_finite() {
            h *= 0.2;
        } else if err <= 1.0 {
            t += h;
            y = y5;
            run.t.push(t);
            run.y.push(y);
            if y[0].abs() > BLOW_UP {
                run.blew_up = true;
                return Ok(run);
            }
            // first-same-as-last: the seventh stage is f at the new point
            k[0] = k[6];
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
            continue;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
        }
        if h < MIN_STEP {
            return Err(Error::StepUnderflow { t });
        }
    }
    Ok(run)
}

fn check_interval(t0: f64, t1: f64, rtol: f64) -> Result<()> {
    if !(rtol > 0.0) || !(t1 >= t0) {
        return Err(Error::InvalidArgument(format!("rtol = {rtol}, interval [{t0}, {t1}]")));
    }
    Ok(())
}

/// Solves `x′ = A(t)x³ + B(t)x²` from `x(t0) = x0` to `t1 > t0`.
pub fn integrate(eq: &FloatEquation, x0: f64, t0: f64, t1: f64, rtol: f64) -> Result<Trajectory> {
    check_interval(t0, t1, rtol)?;
    if x0 == 0.0 || t1 == t0 {
        return Ok(Trajectory {
            t: vec![t0, t1],
            x: vec![x0, x0],
            blew_up: false,
        });
    }
    let run = dopri(|t, y: &[f64; 1]| [eq.rhs(t, y[0])], [x0], t0, t1, rtol)?;
    Ok(Trajectory {
        t: run.t,
        x: run.y.into_iter().map(|y| y[0]).collect(),
        blew_up: run.blew_up,
    })
}

/// `x(2π)` together with `log dx(2π)/dx₀`, from the variational equation
/// `(log m)′ = 3A x² + 2B x`.
pub fn return_map_with_log_derivative(eq: &FloatEquation, x0: f64, rtol: f64) -> Result<Option<(f64, f64)>> {
    check_interval(0.0, TAU, rtol)?;
    let rhs = |t: f64, y: &[f64; 2]| {
        let (a, b) = (eq.a.eval(t), eq.b.eval(t));
        let x = y[0];
        [a * x * x * x + b * x * x, 3.0 * a * x * x + 2.0 * b * x]
    };
    let run = dopri(rhs, [x0, 0.0], 0.0, TAU, rtol)?;
    if run.blew_up {
        return Ok(None);
    }
    let last = run.y.last().expect("runs start with y0");
    Ok(Some((last[0], last[1])))
}

/// `x(2π)` from `x(0) = x0`, or `None` on blow-up.
pub fn return_map(eq: &FloatEquation, x0: f64, rtol: f64) -> Result<Option<f64>> {
    Ok(integrate(eq, x0, 0.0, TAU, rtol)?.last())
}

/// One evaluation of the return map with its cost.
#[derive(Clone, Debug, PartialEq)]
pub struct ReturnMapSample {
    pub x0: f64,
    pub x2pi: Option<f64>,
    pub steps: usize,
    pub max_abs: f64,
}

pub fn sample(eq: &FloatEquation, x0: f64, rtol: f64) -> Result<ReturnMapSample> {
    let traj = integrate(eq, x0, 0.0, TAU, rtol)?;
    Ok(ReturnMapSample {
        x0,
        x2pi: traj.last(),
        steps: traj.steps(),
        max_abs: traj.max_abs(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
    Neutral,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Neutral => "neutral",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint {
    pub x0: f64,
    pub multiplier: f64,
    pub stability: Stability,
}

/// Scan settings. `grid` is the number of subintervals of `[x_min, x_max]`.
#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub x_min: f64,
    pub x_max: f64,
    pub grid: usize,
    pub rtol: f64,
    pub tol: f64,
}

impl ScanOptions {
    pub fn new(x_min: f64, x_max: f64, grid: usize) -> Self {
        ScanOptions {
            x_min,
            x_max,
            grid,
            rtol: DEFAULT_RTOL,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LimitCycleReport {
    /// Sorted by `x0`; includes the trivial solution when it is in range.
    pub fixed_points: Vec<FixedPoint>,
    pub count_nontrivial: usize,
    /// `None` when `A = 0`, where the bound does not apply.
    pub bound: Option<usize>,
    pub bound_respected: bool,
    /// Subintervals whose grid points blew up before `t = 2π`.
    pub unscanned: Vec<(f64, f64)>,
    pub samples: Vec<ReturnMapSample>,
}

fn central_difference(eq: &FloatEquation, x: f64, rtol: f64) -> Result<Option<f64>> {
    let hi = return_map(eq, x + DIFF_STEP, rtol)?;
    let lo = return_map(eq, x - DIFF_STEP, rtol)?;
    Ok(hi.zip(lo).map(|(hi, lo)| (hi - lo) / (2.0 * DIFF_STEP)))
}

/// Derivative of the return map at a fixed point. Next to the edge of the
/// escaping region one neighbour may blow up; the inverse map and then the
/// variational equation are tried in that case.
fn multiplier(eq: &FloatEquation, x: f64, rtol: f64) -> Result<f64> {
    if let Some(m) = central_difference(eq, x, rtol)? {
        return Ok(m);
    }
    let rev = eq.reversed();
    if let Some(m) = central_difference(&rev, x, rtol)? {
        return Ok(1.0 / m);
    }
    log::debug!("neighbours of fixed point {x} blew up; using the variational equation");
    if let Some((_, log_m)) = return_map_with_log_derivative(eq, x, rtol)? {
        return Ok(log_m.exp());
    }
    match return_map_with_log_derivative(&rev, x, rtol)? {
        Some((_, log_m)) => Ok((-log_m).exp()),
        None => Err(Error::Inconclusive(format!(
            "fixed point {x} blew up in both directions"
        ))),
    }
}

fn classify(m: f64) -> Stability {
    if m < 1.0 - NEUTRAL_BAND {
        Stability::Stable
    } else if m > 1.0 + NEUTRAL_BAND {
        Stability::Unstable
    } else {
        Stability::Neutral
    }
}

/// Refines a sign change of `h(x) = P(x) − x` on `[lo, hi]` to width `tol`.
fn bisect(eq: &FloatEquation, mut lo: f64, mut hi: f64, h_lo: f64, rtol: f64, tol: f64) -> Result<f64> {
    let sign_lo = h_lo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let Some(r) = return_map(eq, mid, rtol)? else {
            return Err(Error::Inconclusive(format!("blow-up inside bracket at {mid}")));
        };
        let h = r - mid;
        if h == 0.0 {
            return Ok(mid);
        }
        if h.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

struct Scan {
    samples: Vec<ReturnMapSample>,
    roots: Vec<f64>,
    gaps: Vec<(f64, f64)>,
}

/// Samples the return map of `eq` on the grid and bisects every sign
/// change of `h(x) = Π(x) − x`.
fn scan(eq: &FloatEquation, opts: &ScanOptions) -> Result<Scan> {
    let step = (opts.x_max - opts.x_min) / opts.grid as f64;
    let samples: Vec<ReturnMapSample> = (0..=opts.grid)
        .into_par_iter()
        .map(|i| sample(eq, opts.x_min + step * i as f64, opts.rtol))
        .collect::<Result<_>>()?;

    let mut roots = Vec::new();
    let mut gaps = Vec::new();
    let mut gap_start: Option<f64> = None;
    let mut prev: Option<(f64, f64)> = None;
    for (i, s) in samples.iter().enumerate() {
        let Some(r) = s.x2pi else {
            if gap_start.is_none() {
                gap_start = Some(if i == 0 { s.x0 } else { samples[i - 1].x0 });
            }
            prev = None;
            continue;
        };
        if let Some(start) = gap_start.take() {
            gaps.push((start, s.x0));
        }
        let h = r - s.x0;
        if h == 0.0 {
            roots.push(s.x0);
        } else if let Some((x_prev, h_prev)) = prev {
            if h_prev != 0.0 && h_prev.signum() != h.signum() {
                roots.push(bisect(eq, x_prev, s.x0, h_prev, opts.rtol, opts.tol)?);
            }
        }
        prev = Some((s.x0, h));
    }
    if let Some(start) = gap_start {
        gaps.push((start, opts.x_max));
    }
    Ok(Scan { samples, roots, gaps })
}

/// Intervals covered by both gap lists.
fn intersect(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if lo < hi {
                out.push((lo, hi));
            }
        }
    }
    out
}

/// Locates the isolated fixed points of the return map in `[x_min, x_max]`.
///
/// `x = 0` is always a fixed point but `h` does not change sign there, so
/// it is added directly when in range. A repelling cycle bordering a region
/// where solutions escape cannot be bracketed by the forward map, so when
/// the forward scan meets blow-up the inverse map is scanned as well.
/// `unscanned` lists the stretches where both directions blew up.
pub fn find_limit_cycles(eq: &AbelEquation, opts: &ScanOptions) -> Result<LimitCycleReport> {
    if !(opts.x_min < opts.x_max) || opts.grid < 2 || !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need x_min < x_max, grid >= 2, tol > 0 (got [{}, {}], {}, {})",
            opts.x_min, opts.x_max, opts.grid, opts.tol
        )));
    }
    let feq = eq.to_f64();
    let step = (opts.x_max - opts.x_min) / opts.grid as f64;
    let Scan {
        samples,
        mut roots,
        gaps,
    } = scan(&feq, opts)?;
    let mut unscanned = gaps;
    if !unscanned.is_empty() {
        let back = scan(&feq.reversed(), opts)?;
        // the two directions locate a shared cycle only to integration accuracy
        let near = |r: f64| roots.iter().any(|&f| (f - r).abs() <= 0.5 * step);
        let fresh: Vec<f64> = back.roots.into_iter().filter(|&r| !near(r)).collect();
        roots.extend(fresh);
        unscanned = intersect(&unscanned, &back.gaps);
    }
    if opts.x_min <= 0.0 && 0.0 <= opts.x_max {
        roots.push(0.0);
    }

    roots.sort_by(f64::total_cmp);
    let dedup = 10.0 * opts.tol;
    let mut merged: Vec<f64> = Vec::new();
    for r in roots {
        match merged.last_mut() {
            Some(last) if (r - *last).abs() <= dedup => {
                // keep the exact zero if it is one of the pair
                if r == 0.0 {
                    *last = 0.0;
                }
            }
            _ => merged.push(r),
        }
    }

    let fixed_points = merged
        .par_iter()
        .map(|&x0| {
            if x0 == 0.0 {
                return Ok(FixedPoint {
                    x0,
                    multiplier: 1.0,
                    stability: Stability::Neutral,
                });
            }
            let m = multiplier(&feq, x0, opts.rtol)?;
            Ok(FixedPoint {
                x0,
                multiplier: m,
                stability: classify(m),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let count_nontrivial = fixed_points.iter().filter(|f| f.x0 != 0.0).count();
    let bound = rational_cycle_bound(eq).ok();
    Ok(LimitCycleReport {
        fixed_points,
        count_nontrivial,
        bound,
        bound_respected: bound.is_none_or(|b| count_nontrivial <= b),
        unscanned,
        samples,
    })
}

/// Worst amplification, as a logarithm, of an error made along the cycle
/// `x = 1/P(t)` within one period. With `L(t) = ∫₀ᵗ 3A x² + 2B x` this is
/// the largest rise of `L` (forward shooting) or its largest fall (backward
/// shooting), whichever is smaller. Shooting at relative accuracy `rtol`
/// cannot resolve the cycle once `rtol·e^growth` is of order one.
pub fn transverse_growth(eq: &AbelEquation, p: &ExactPoly, nodes: usize) -> f64 {
    let feq = eq.to_f64();
    let pf = p.to_f64();
    let dt = TAU / nodes as f64;
    let (mut l, mut low, mut high) = (0.0_f64, 0.0_f64, 0.0_f64);
    let (mut rise, mut fall) = (0.0_f64, 0.0_f64);
    // the integrand is smooth and periodic, so the rectangle rule converges fast
    for k in 0..nodes {
        let t = k as f64 * dt;
        let x = 1.0 / pf.eval(t);
        l += (3.0 * feq.a.eval(t) * x * x + 2.0 * feq.b.eval(t) * x) * dt;
        low = low.min(l);
        high = high.max(l);
        rise = rise.max(l - low);
        fall = fall.max(high - l);
    }
    rise.min(fall)
}

/// Number of fixed points within `tol` of some `1/P(0)`.
pub fn rational_matches(report: &LimitCycleReport, curves: &[ExactPoly], tol: f64) -> usize {
    report
        .fixed_points
        .iter()
        .filter(|f| curves.iter().any(|p| (f.x0 - 1.0 / p.eval(0.0)).abs() <= tol))
        .count()
}

/// `max |x′ − Ax³ − Bx²|` for `x = 1/P` at `samples` equispaced points of
/// `[0, 2π)`, using `x′ = −P′/P²`.
pub fn verify_curve_numeric(eq: &AbelEquation, p: &ExactPoly, samples: usize) -> f64 {
    let feq = eq.to_f64();
    let pf = p.to_f64();
    let dpf = p.derivative().to_f64();
    (0..samples)
        .map(|j| {
            let t = TAU * j as f64 / samples as f64;
            let pv = pf.eval(t);
            let x = 1.0 / pv;
            let dx = -dpf.eval(t) / (pv * pv);
            (dx - feq.rhs(t, x)).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{construct_two_curves, ParamTuple};

    fn worked() -> AbelEquation {
        construct_two_curves(&ParamTuple::worked_example()).unwrap().eq
    }

    #[test]
    fn zero_is_an_equilibrium() {
        let feq = worked().to_f64();
        let tr = integrate(&feq, 0.0, 0.0, TAU, 1e-10).unwrap();
        assert!(tr.x.iter().all(|&x| x == 0.0));
        assert_eq!(return_map(&feq, 0.0, 1e-10).unwrap(), Some(0.0));
    }

    #[test]
    fn invariant_lines_are_periodic() {
        let feq = worked().to_f64();
        for x0 in [1.0 / 12.0, 1.0 / 24.0] {
            let r = return_map(&feq, x0, 1e-10).unwrap().unwrap();
            assert!((r - x0).abs() < 1e-8, "{x0} -> {r}");
        }
        let x0 = 1.0 / 12.0 + 0.01;
        let r = return_map(&feq, x0, 1e-10).unwrap().unwrap();
        assert!((r - x0).abs() > 1e-4);
    }

    #[test]
    fn worked_example_scan() {
        let rep = find_limit_cycles(&worked(), &ScanOptions::new(-0.05, 0.2, 400)).unwrap();
        let xs: Vec<f64> = rep.fixed_points.iter().map(|f| f.x0).collect();
        assert_eq!(xs.len(), 3, "{xs:?}");
        assert_eq!(xs[0], 0.0);
        assert!((xs[1] - 1.0 / 24.0).abs() < 1e-6);
        assert!((xs[2] - 1.0 / 12.0).abs() < 1e-6);
        assert_eq!((rep.count_nontrivial, rep.bound), (2, Some(2)));
        let valid: Vec<&ReturnMapSample> = rep.samples.iter().filter(|s| s.x2pi.is_some()).collect();
        assert!(valid.windows(2).all(|w| w[0].x2pi < w[1].x2pi));
    }

    #[test]
    fn variational_multiplier_agrees_with_difference() {
        let feq = worked().to_f64();
        for x in [1.0 / 24.0, 1.0 / 12.0, 0.06] {
            let (r, log_m) = return_map_with_log_derivative(&feq, x, 1e-11).unwrap().unwrap();
            assert!((r - return_map(&feq, x, 1e-11).unwrap().unwrap()).abs() < 1e-9);
            let m = multiplier(&feq, x, 1e-11).unwrap();
            assert!((log_m.exp() - m).abs() < 1e-4 * m, "{x}: {} vs {m}", log_m.exp());
        }
    }

    #[test]
    fn reversed_map_inverts() {
        let feq = worked().to_f64();
        for x in [0.02, 0.05, 0.07] {
            let y = return_map(&feq, x, 1e-11).unwrap().unwrap();
            let back = return_map(&feq.reversed(), y, 1e-11).unwrap().unwrap();
            assert!((back - x).abs() < 1e-9, "{x} -> {y} -> {back}");
        }
    }

    #[test]
    fn cubic_escapes() {
        let eq = AbelEquation::new(ExactPoly::one(), ExactPoly::zero()).to_f64();
        let tr = integrate(&eq, 10.0, 0.0, TAU, 1e-10).unwrap();
        assert!(tr.blew_up);
        assert_eq!(tr.last(), None);
    }

    #[test]
    fn separated_case_has_zero_and_one() {
        let a = ExactPoly::from_ints(&[1], &[0]) + ExactPoly::cos_k(1).scale(&crate::rat(1, 2));
        let eq = AbelEquation::new(a.clone(), -&a);
        let rep = find_limit_cycles(&eq, &ScanOptions::new(-0.5, 1.5, 80)).unwrap();
        let xs: Vec<f64> = rep.fixed_points.iter().map(|f| f.x0).collect();
        assert_eq!(xs.len(), 2, "{xs:?}");
        assert_eq!(xs[0], 0.0);
        assert!((xs[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn curve_residuals() {
        let c = construct_two_curves(&ParamTuple::worked_example()).unwrap();
        assert!(verify_curve_numeric(&c.eq, &c.p1, 200) < 1e-10);
        assert!(verify_curve_numeric(&c.eq, &ExactPoly::from_ints(&[3, 1], &[]), 200) > 1e-3);
        let a = ExactPoly::from_ints(&[2, 1], &[]);
        let sep = AbelEquation::new(a.clone(), -&a);
        assert!(verify_curve_numeric(&sep, &ExactPoly::one(), 200) < 1e-14);
    }

    #[test]
    fn invalid_scan_options() {
        let eq = worked();
        assert!(find_limit_cycles(&eq, &ScanOptions::new(1.0, 0.0, 10)).is_err());
        assert!(find_limit_cycles(&eq, &ScanOptions::new(0.0, 1.0, 1)).is_err());
    }
}
