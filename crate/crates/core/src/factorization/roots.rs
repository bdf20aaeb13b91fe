//! All complex roots of a dense polynomial.
//!
//! Aberth–Ehrlich simultaneous iteration does the work; if it stalls, the
//! eigenvalues of the companion matrix (complex Schur form) are used
//! instead. Both results are polished with a few guarded Newton steps and
//! near-coincident roots are merged into their centroid, which is far more
//! accurate than the individual members of a multiple-root cluster.

use nalgebra::DMatrix;
use num_complex::Complex64;

const MAX_ITER: usize = 500;
const CONVERGED: f64 = 1e-14;
const CLUSTER_RADIUS: f64 = 1e-6;

fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

fn aberth(p: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = p.len() - 1;
    let radius = (p[0].norm() / p[n].norm()).powf(1.0 / n as f64);
    let radius = if radius.is_finite() && radius > 0.0 {
        radius
    } else {
        1.0
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius * (1.0 + 0.05 * (k % 3) as f64), theta)
        })
        .collect();

    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (val, der) = horner(p, z[k]);
            if val.norm() == 0.0 {
                continue;
            }
            let ratio = val / der;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            z[k] -= step;
            max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
        }
        if max_step <= CONVERGED {
            return Some(z);
        }
    }
    None
}

fn companion_eigenvalues(p: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = p.len() - 1;
    let lead = p[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p[i] / lead;
    }
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000)?;
    let (_, t) = schur.unpack();
    Some((0..n).map(|i| t[(i, i)]).collect())
}

fn polish(p: &[Complex64], z: &mut Complex64) {
    for _ in 0..3 {
        let (val, der) = horner(p, *z);
        if der.norm() == 0.0 {
            return;
        }
        let cand = *z - val / der;
        if horner(p, cand).0.norm() < val.norm() {
            *z = cand;
        } else {
            return;
        }
    }
}

fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// A root of multiplicity `m` is a simple root of the `(m-1)`-th derivative,
/// where Newton converges quadratically again.
fn polish_multiple(p: &[Complex64], z: &mut Complex64, m: usize) {
    let mut d = p.to_vec();
    for _ in 1..m {
        d = derivative(&d);
    }
    if d.len() < 2 {
        return;
    }
    polish(&d, z);
}

fn merge_clusters(p: &[Complex64], roots: &mut [Complex64]) {
    let n = roots.len();
    let mut group = vec![usize::MAX; n];
    for i in 0..n {
        if group[i] != usize::MAX {
            continue;
        }
        group[i] = i;
        let mut members = vec![i];
        let mut grew = true;
        while grew {
            grew = false;
            for j in 0..n {
                if group[j] != usize::MAX {
                    continue;
                }
                let close = members
                    .iter()
                    .any(|&m| (roots[m] - roots[j]).norm() < CLUSTER_RADIUS * roots[m].norm().max(1.0));
                if close {
                    group[j] = i;
                    members.push(j);
                    grew = true;
                }
            }
        }
        if members.len() > 1 {
            let mut centroid = members.iter().map(|&m| roots[m]).sum::<Complex64>() / members.len() as f64;
            polish_multiple(p, &mut centroid, members.len());
            for &m in &members {
                roots[m] = centroid;
            }
        }
    }
}

/// Roots of `Σ p[k] zᵏ`. Leading zeros are ignored; `None` only if both
/// the iteration and the eigenvalue route fail.
pub(crate) fn roots(p: &[Complex64]) -> Option<Vec<Complex64>> {
    let deg = p.iter().rposition(|c| c.norm() != 0.0)?;
    let p = &p[..=deg];
    if deg == 0 {
        return Some(Vec::new());
    }
    let mut z = match aberth(p) {
        Some(z) => z,
        None => {
            log::debug!("Aberth iteration stalled; falling back to companion matrix");
            companion_eigenvalues(p)?
        }
    };
    for r in z.iter_mut() {
        polish(p, r);
    }
    merge_clusters(p, &mut z);
    Some(z)
}
