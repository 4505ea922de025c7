//! Counting engine: how many members of a conic pencil close a tangent
//! chain of a given exact order against a fixed conic of the pencil.
//!
//! The closure parameters are isolated points of the complex parameter line
//! of the pencil, so the scan covers both affine charts of that line with a
//! quasi-uniform sample grid, ranks the samples by closure defect and runs a
//! derivative-free descent from the best-separated seeds. The defect is the
//! modulus of an analytic function of the parameter, so its interior local
//! minima are exactly the closure parameters.

use crate::conic::{
    poncelet_chain, poncelet_step, random_point_on_conic, tangent_lines_from_point, Conic,
    ConicPencil, TangentChainState,
};
use crate::error::{GeomError, Result};
use crate::num::{nelder_mead, one, seeded_rng, sunflower_disk};
use crate::projective::{PlanePoint, ProjectivePoint};
use crate::tolerance::ToleranceContext;
use num_complex::Complex64;

/// Number of points of exact order n on a 2-dimensional torus: the Jordan
/// totient n^2 prod_{p | n} (1 - p^-2), with value 1 at n = 1.
pub fn jordan_totient_t(n: u32) -> Result<u64> {
    if n < 1 {
        return Err(GeomError::InvalidOrder { min: 1, got: n });
    }
    let mut t = (n as u64) * (n as u64);
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            t = t / (p * p) * (p * p - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        t = t / (m * m) * (m * m - 1);
    }
    Ok(t)
}

/// Which side of the duality the chain runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CountKind {
    /// Member inscribed into D: tangents touch the member, vertices on D.
    Inscribed,
    /// Member circumscribed about D: dual member inscribed into dual D.
    Circumscribed,
}

/// A pencil parameter in homogeneous coordinates.
#[derive(Debug, Clone, Copy)]
struct Param {
    lambda: Complex64,
    mu: Complex64,
}

impl Param {
    fn as_point(&self) -> ProjectivePoint<2> {
        ProjectivePoint::new([self.lambda, self.mu])
    }
}

struct ScanProblem {
    pencil: ConicPencil,
    carrier: Conic,
    /// Independent chain starts; a zero only needs to be clean from one.
    start_vertices: [PlanePoint; 2],
    n: u32,
    kind: CountKind,
    ctx: ToleranceContext,
}

impl ScanProblem {
    fn member_chain_pair(&self, p: Param) -> Option<(Conic, Conic)> {
        let member = self.pencil.member(p.lambda, p.mu);
        let member = member.normalized().ok()?;
        // cones are never in closing position; skip a neighborhood of them
        if member.det().norm() < 1e-6 {
            return None;
        }
        match self.kind {
            CountKind::Inscribed => Some((member, self.carrier)),
            CountKind::Circumscribed => Some((member.dual(), self.carrier)),
        }
    }

    /// Smooth closure defect of the n-step chain for this member, minimized
    /// over the starting vertices and the two possible starting tangents.
    /// Closure is a property of the member, so any clean start detects it.
    fn defect(&self, p: Param) -> f64 {
        let Some((inscribed, carrier)) = self.member_chain_pair(p) else {
            return f64::INFINITY;
        };
        let mut best = f64::INFINITY;
        for v0 in &self.start_vertices {
            let Ok((t1, t2, coincident)) = tangent_lines_from_point(&inscribed, v0, &self.ctx)
            else {
                continue;
            };
            if coincident {
                continue;
            }
            for t in [t1, t2] {
                let start = TangentChainState::new(*v0, t);
                let mut state = start;
                let mut ok = true;
                for _ in 0..self.n {
                    match poncelet_step(&inscribed, &carrier, &state, &self.ctx) {
                        Ok(s) => state = s,
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    let d = state
                        .u
                        .chordal_distance(&start.u)
                        .max(state.line.chordal_distance(&start.line));
                    best = best.min(d);
                }
            }
        }
        best
    }

    /// Verified exact-order closure at a refined parameter.
    fn closes_with_exact_order(&self, p: Param) -> bool {
        let Some((inscribed, carrier)) = self.member_chain_pair(p) else {
            return false;
        };
        for v0 in &self.start_vertices {
            let Ok((t1, t2, coincident)) = tangent_lines_from_point(&inscribed, v0, &self.ctx)
            else {
                continue;
            };
            if coincident {
                continue;
            }
            for t in [t1, t2] {
                let start = TangentChainState::new(*v0, t);
                if let Ok(rep) = poncelet_chain(&inscribed, &carrier, &start, self.n, &self.ctx) {
                    if rep.closed && rep.order == Some(self.n) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn scan_params(samples: usize) -> Vec<Param> {
    let half = samples.div_ceil(2);
    let mut out = Vec::with_capacity(2 * half);
    for z in sunflower_disk(half, 1.2) {
        out.push(Param { lambda: z, mu: one() });
    }
    for z in sunflower_disk(half, 1.2) {
        out.push(Param { lambda: one(), mu: z });
    }
    out
}

#[cfg(feature = "parallel")]
fn evaluate_defects(problem: &ScanProblem, params: &[Param]) -> Vec<f64> {
    use rayon::prelude::*;
    params.par_iter().map(|p| problem.defect(*p)).collect()
}

#[cfg(not(feature = "parallel"))]
fn evaluate_defects(problem: &ScanProblem, params: &[Param]) -> Vec<f64> {
    evaluate_defects_seq(problem, params)
}

fn evaluate_defects_seq(problem: &ScanProblem, params: &[Param]) -> Vec<f64> {
    params.iter().map(|p| problem.defect(*p)).collect()
}

fn count_closing_members(problem: &ScanProblem, sequential: bool) -> u32 {
    let ctx = problem.ctx;
    let params = scan_params(ctx.scan_samples);
    let defects = if sequential {
        evaluate_defects_seq(problem, &params)
    } else {
        evaluate_defects(problem, &params)
    };

    // best-separated seed selection
    let mut order: Vec<usize> = (0..params.len()).collect();
    order.sort_by(|&i, &j| defects[i].total_cmp(&defects[j]));
    let sep = 2.0 / (ctx.scan_samples as f64).sqrt();
    let mut seeds: Vec<Param> = Vec::new();
    for &i in &order {
        if !defects[i].is_finite() || seeds.len() >= 48 {
            break;
        }
        let p = params[i];
        let pt = p.as_point();
        if seeds.iter().all(|s| s.as_point().chordal_distance(&pt) > sep) {
            seeds.push(p);
        }
    }

    let mut accepted: Vec<ProjectivePoint<2>> = Vec::new();
    for seed in seeds {
        // refine in the chart where the seed is better conditioned
        let use_mu_chart = seed.lambda.norm() > seed.mu.norm();
        let z0 = if use_mu_chart {
            seed.mu / seed.lambda
        } else {
            seed.lambda / seed.mu
        };
        let mut f = |z: Complex64| {
            let p = if use_mu_chart {
                Param { lambda: one(), mu: z }
            } else {
                Param { lambda: z, mu: one() }
            };
            problem.defect(p)
        };
        let (z1, v1) = nelder_mead(&mut f, z0, 0.05, 240);
        let (z2, v2) = nelder_mead(&mut f, z1, 1e-4, 160);
        let (z, value) = if v2 <= v1 { (z2, v2) } else { (z1, v1) };
        if value >= ctx.closure_tol {
            continue;
        }
        let refined = if use_mu_chart {
            Param { lambda: one(), mu: z }
        } else {
            Param { lambda: z, mu: one() }
        };
        if !problem.closes_with_exact_order(refined) {
            continue;
        }
        let pt = refined.as_point();
        let merge = (10.0 * ctx.rel_tol).max(1e-5);
        if accepted.iter().all(|a| a.chordal_distance(&pt) > merge) {
            accepted.push(pt);
        }
    }
    accepted.len() as u32
}

fn count_impl(
    c: &Conic,
    d: &Conic,
    n: u32,
    seed: u64,
    ctx: &ToleranceContext,
    kind: CountKind,
    sequential: bool,
) -> Result<u32> {
    // the half-totient is not an integer below n = 3; the closing theorems
    // start at triangles
    if n < 3 {
        return Err(GeomError::InvalidOrder { min: 3, got: n });
    }
    let pencil = ConicPencil::new(*c, *d, ctx)?;
    if !pencil.is_generic(ctx) {
        return Err(GeomError::NonGenericPencil);
    }
    let mut rng = seeded_rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let carrier = match kind {
        CountKind::Inscribed => *d,
        CountKind::Circumscribed => d.dual(),
    };
    let start_vertices = [
        random_point_on_conic(&carrier, &mut rng, ctx),
        random_point_on_conic(&carrier, &mut rng, ctx),
    ];
    let problem = ScanProblem {
        pencil,
        carrier,
        start_vertices,
        n,
        kind,
        ctx: *ctx,
    };
    Ok(count_closing_members(&problem, sequential))
}

/// Number of pencil members that are n-inscribed into `d` (polygon tangent
/// to the member with all vertices on `d`), for exact order n >= 3.
pub fn count_inscribed_in_pencil(
    c: &Conic,
    d: &Conic,
    n: u32,
    seed: u64,
    ctx: &ToleranceContext,
) -> Result<u32> {
    count_impl(c, d, n, seed, ctx, CountKind::Inscribed, false)
}

/// Sequential variant of [`count_inscribed_in_pencil`]; identical results,
/// used as the baseline of the benchmark suite.
pub fn count_inscribed_in_pencil_seq(
    c: &Conic,
    d: &Conic,
    n: u32,
    seed: u64,
    ctx: &ToleranceContext,
) -> Result<u32> {
    count_impl(c, d, n, seed, ctx, CountKind::Inscribed, true)
}

/// Number of pencil members n-circumscribed about `d` (polygon with
/// vertices on the member and sides tangent to `d`), for exact order n >= 3.
pub fn count_circumscribed_in_pencil(
    c: &Conic,
    d: &Conic,
    n: u32,
    seed: u64,
    ctx: &ToleranceContext,
) -> Result<u32> {
    count_impl(c, d, n, seed, ctx, CountKind::Circumscribed, false)
}

/// Sequential variant of [`count_circumscribed_in_pencil`].
pub fn count_circumscribed_in_pencil_seq(
    c: &Conic,
    d: &Conic,
    n: u32,
    seed: u64,
    ctx: &ToleranceContext,
) -> Result<u32> {
    count_impl(c, d, n, seed, ctx, CountKind::Circumscribed, true)
}

/// Seeded random generic pencil used by the scenario runner and the tests.
pub fn random_generic_pencil(seed: u64, ctx: &ToleranceContext) -> (Conic, Conic) {
    let mut rng = seeded_rng(seed);
    loop {
        let c = crate::conic::random_conic(&mut rng, ctx);
        let d = crate::conic::random_conic(&mut rng, ctx);
        if let Ok(p) = ConicPencil::new(c, d, ctx) {
            if p.is_generic(ctx) {
                return (c, d);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_values() {
        // oracles: (Z/3)^2 has 8 nonzero points, all of exact order 3;
        // (Z/4)^2 has 16 points of order dividing 4 minus 4 of order
        // dividing 2.
        assert_eq!(jordan_totient_t(1).unwrap(), 1);
        assert_eq!(jordan_totient_t(2).unwrap(), 3);
        assert_eq!(jordan_totient_t(3).unwrap(), 8);
        assert_eq!(jordan_totient_t(4).unwrap(), 12);
        assert_eq!(jordan_totient_t(6).unwrap(), 24);
        assert_eq!(jordan_totient_t(12).unwrap(), 96);
        assert!(jordan_totient_t(0).is_err());
    }

    #[test]
    fn small_orders_rejected() {
        let ctx = ToleranceContext::default();
        let (c, d) = random_generic_pencil(0, &ctx);
        assert!(matches!(
            count_inscribed_in_pencil(&c, &d, 2, 0, &ctx),
            Err(GeomError::InvalidOrder { min: 3, got: 2 })
        ));
    }

    #[test]
    fn inscribed_count_matches_half_totient() {
        let ctx = ToleranceContext::default();
        let (c, d) = random_generic_pencil(7, &ctx);
        let count = count_inscribed_in_pencil(&c, &d, 3, 7, &ctx).unwrap();
        assert_eq!(count, 4);
    }

    #[test]
    fn sequential_path_agrees() {
        let ctx = ToleranceContext {
            scan_samples: 1024,
            ..Default::default()
        };
        let (c, d) = random_generic_pencil(1, &ctx);
        let a = count_inscribed_in_pencil(&c, &d, 3, 1, &ctx).unwrap();
        let b = count_inscribed_in_pencil_seq(&c, &d, 3, 1, &ctx).unwrap();
        assert_eq!(a, b);
    }
}
