//! Polynomial root extraction over the complex numbers: companion-matrix
//! eigenvalues followed by multiplicity clustering.

use crate::error::{GeomError, Result};
use crate::num::one;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// A root with its numerically detected multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Roots of the polynomial with ascending coefficients `coeffs`
/// (coeffs[k] multiplies x^k). Near-coincident eigenvalues are clustered
/// into one root with summed multiplicity.
///
/// Companion eigenvalues split an exact m-fold root by roughly
/// machine_eps^(1/m) times the conditioning, so the cluster radius uses
/// eps^0.4 as a floor under the nominal rel_tol * degree rule. Merging
/// near-coincident roots is the safe direction for every caller here: a
/// borderline pencil is treated as degenerate rather than generic.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<PolyRoot>> {
    poly_roots_tol(coeffs, 1e-9)
}

pub fn poly_roots_tol(coeffs: &[Complex64], rel_tol: f64) -> Result<Vec<PolyRoot>> {
    let max_mag = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_mag == 0.0 || coeffs.is_empty() {
        return Err(GeomError::ZeroPolynomial);
    }
    // trim negligible leading coefficients
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].norm() <= 1e-13 * max_mag {
        deg -= 1;
    }
    if deg == 0 {
        return Err(GeomError::ZeroPolynomial);
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = (0..deg).map(|i| coeffs[i] / lead).collect();

    let eigs: Vec<Complex64> = if deg == 1 {
        vec![-monic[0]]
    } else if deg == 2 {
        let (r1, r2) = crate::num::quadratic_roots(one(), monic[1], monic[0]);
        vec![r1, r2]
    } else {
        let mut m = DMatrix::<Complex64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = one();
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -monic[i];
        }
        let ev = m.eigenvalues().ok_or(GeomError::ZeroPolynomial)?;
        ev.iter().copied().collect()
    };

    Ok(cluster_roots(&eigs, rel_tol))
}

/// Greedy clustering of computed roots within the multiplicity radius.
pub fn cluster_roots(values: &[Complex64], rel_tol: f64) -> Vec<PolyRoot> {
    let deg = values.len();
    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let radius = rel_tol.max(f64::EPSILON.powf(0.4)) * deg as f64 * scale;
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    let mut vals: Vec<Complex64> = values.to_vec();
    vals.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for v in vals {
        match out.iter_mut().find(|(c, _)| (*c - v).norm() < radius) {
            Some((c, m)) => {
                // running mean keeps the representative centered
                *c = (*c * (*m as f64) + v) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => out.push((v, 1)),
        }
    }
    out.into_iter()
        .map(|(value, multiplicity)| PolyRoot {
            value,
            multiplicity,
        })
        .collect()
}
