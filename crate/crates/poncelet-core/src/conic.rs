//! Plane conics over the complex numbers: tangent lines, chord intersections
//! and the classical Poncelet traverse on a pair of conics.

use crate::error::{GeomError, Result};
use crate::num::{homogeneous_quadratic_roots, one, random_unit_disk, zero};
use crate::projective::{cross, lex_cmp, PlaneLine, PlanePoint, ProjectivePoint};
use crate::tolerance::ToleranceContext;
use crate::ChainReport;
use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

/// A conic as a symmetric 3x3 complex matrix up to scale.
#[derive(Debug, Clone, Copy)]
pub struct Conic {
    m: Matrix3<Complex64>,
}

impl Conic {
    pub fn new(m: Matrix3<Complex64>) -> Self {
        let sym = (m + m.transpose()).scale(0.5);
        Self { m: sym }
    }

    pub fn from_diagonal(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self {
            m: Matrix3::from_diagonal(&Vector3::new(a, b, c)),
        }
    }

    /// Circle with the given (complex) center and squared radius, as a conic
    /// in coordinates (x : y : z).
    pub fn circle(cx0: Complex64, cy0: Complex64, r_sq: Complex64) -> Self {
        let mut m = Matrix3::zeros();
        m[(0, 0)] = one();
        m[(1, 1)] = one();
        m[(0, 2)] = -cx0;
        m[(2, 0)] = -cx0;
        m[(1, 2)] = -cy0;
        m[(2, 1)] = -cy0;
        m[(2, 2)] = cx0 * cx0 + cy0 * cy0 - r_sq;
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.m
    }

    /// Scale-canonical form (largest-magnitude entry 1).
    pub fn normalized(&self) -> Result<Self> {
        let p = self.as_point6().normalize()?;
        let c = p.coords();
        Ok(Self::from_point6(&ProjectivePoint::new(*c)))
    }

    /// Upper-triangle coefficients as a projective 6-vector, the canonical
    /// representative for equality tests.
    pub fn as_point6(&self) -> ProjectivePoint<6> {
        ProjectivePoint::new([
            self.m[(0, 0)],
            self.m[(0, 1)],
            self.m[(0, 2)],
            self.m[(1, 1)],
            self.m[(1, 2)],
            self.m[(2, 2)],
        ])
    }

    pub fn from_point6(p: &ProjectivePoint<6>) -> Self {
        let c = p.coords();
        let mut m = Matrix3::zeros();
        m[(0, 0)] = c[0];
        m[(0, 1)] = c[1];
        m[(1, 0)] = c[1];
        m[(0, 2)] = c[2];
        m[(2, 0)] = c[2];
        m[(1, 1)] = c[3];
        m[(1, 2)] = c[4];
        m[(2, 1)] = c[4];
        m[(2, 2)] = c[5];
        Self { m }
    }

    pub fn proj_eq(&self, other: &Conic, ctx: &ToleranceContext) -> bool {
        self.as_point6().proj_eq(&other.as_point6(), ctx)
    }

    pub fn evaluate(&self, p: &PlanePoint) -> Complex64 {
        let v = Vector3::from_row_slice(p.coords());
        (v.transpose() * self.m * v)[(0, 0)]
    }

    /// Scale-free incidence residual of a point on the conic.
    pub fn incidence_residual(&self, p: &PlanePoint) -> f64 {
        let n = match self.normalized() {
            Ok(c) => c,
            Err(_) => return f64::NAN,
        };
        let pn = match p.normalize() {
            Ok(p) => p,
            Err(_) => return f64::NAN,
        };
        n.evaluate(&pn).norm()
    }

    /// Polar line of a point (tangent line when the point is on the conic).
    pub fn polar(&self, p: &PlanePoint) -> PlaneLine {
        let v = Vector3::from_row_slice(p.coords());
        let w = self.m * v;
        PlaneLine::new([w[0], w[1], w[2]])
    }

    pub fn det(&self) -> Complex64 {
        self.m.determinant()
    }

    pub fn is_smooth(&self, ctx: &ToleranceContext) -> bool {
        match self.normalized() {
            Ok(n) => n.det().norm() > ctx.rel_tol,
            Err(_) => false,
        }
    }

    /// Adjugate matrix; the dual conic of a smooth conic.
    pub fn adjugate(&self) -> Conic {
        Conic {
            m: adjugate3(&self.m),
        }
    }

    pub fn dual(&self) -> Conic {
        self.adjugate()
    }

    /// Scale-free tangency residual of a line against the conic.
    pub fn tangency_residual(&self, line: &PlaneLine) -> f64 {
        let n = match self.normalized() {
            Ok(c) => c,
            Err(_) => return f64::NAN,
        };
        let ln = match line.normalize() {
            Ok(l) => l,
            Err(_) => return f64::NAN,
        };
        let v = Vector3::from_row_slice(ln.coords());
        (v.transpose() * adjugate3(&n.m) * v)[(0, 0)].norm()
    }
}

pub(crate) fn adjugate3(m: &Matrix3<Complex64>) -> Matrix3<Complex64> {
    let a = |i: usize, j: usize| m[(i, j)];
    let cof = |i0: usize, i1: usize, j0: usize, j1: usize| a(i0, j0) * a(i1, j1) - a(i0, j1) * a(i1, j0);
    Matrix3::new(
        cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2),
        -cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2),
        cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1),
    )
    .transpose()
}

/// Splits a degenerate (rank <= 2) symmetric 3x3 form into its two lines.
/// For a rank-1 form both returned lines coincide.
pub fn split_degenerate_conic(m: &Matrix3<Complex64>) -> (PlaneLine, PlaneLine) {
    let scale = m.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
    let b = adjugate3(m);
    // adj(M) = -p p^T where p is the intersection point of the two lines
    let mut bi = 0;
    let mut bmag = 0.0;
    for i in 0..3 {
        let v = b[(i, i)].norm();
        if v > bmag {
            bi = i;
            bmag = v;
        }
    }
    let work = if bmag > 1e-22 * scale * scale {
        let beta = (-b[(bi, bi)]).sqrt();
        let p = Vector3::new(b[(0, bi)], b[(1, bi)], b[(2, bi)]) / beta;
        let cross_p = Matrix3::new(
            zero(), p[2], -p[1],
            -p[2], zero(), p[0],
            p[1], -p[0], zero(),
        );
        m + cross_p
    } else {
        // rank-1 double line
        *m
    };
    let mut best = (0usize, 0usize);
    let mut mag = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let v = work[(i, j)].norm();
            if v > mag {
                best = (i, j);
                mag = v;
            }
        }
    }
    let (i0, j0) = best;
    let l = PlaneLine::new([work[(i0, 0)], work[(i0, 1)], work[(i0, 2)]]);
    let mm = PlaneLine::new([work[(0, j0)], work[(1, j0)], work[(2, j0)]]);
    if lex_cmp(&l, &mm) == std::cmp::Ordering::Greater {
        (mm, l)
    } else {
        (l, mm)
    }
}

/// The two tangent lines to a smooth conic through a point. When the point
/// lies on the conic both lines coincide with the tangent there and the
/// returned flag is set.
pub fn tangent_lines_from_point(
    conic: &Conic,
    u: &PlanePoint,
    ctx: &ToleranceContext,
) -> Result<(PlaneLine, PlaneLine, bool)> {
    if !conic.is_smooth(ctx) {
        return Err(GeomError::DegenerateConic);
    }
    let c = conic.normalized()?;
    let un = u.normalize()?;
    let e = c.evaluate(&un);
    let polar = c.polar(&un);
    if e.norm() < ctx.rel_tol * 10.0 {
        return Ok((polar.normalize()?, polar.normalize()?, true));
    }
    let v = Vector3::from_row_slice(un.coords());
    let w = c.m * v;
    let pair = c.m.map(|x| x * e) - w * w.transpose();
    let (l1, l2) = split_degenerate_conic(&pair);
    Ok((l1.normalize()?, l2.normalize()?, false))
}

/// The two intersection points of a line (given by two spanning points)
/// with a conic.
pub fn line_conic_intersections(
    conic: &Conic,
    a: &PlanePoint,
    b: &PlanePoint,
) -> [PlanePoint; 2] {
    let va = Vector3::from_row_slice(a.coords());
    let vb = Vector3::from_row_slice(b.coords());
    let qaa = (va.transpose() * conic.m * va)[(0, 0)];
    let qab = (va.transpose() * conic.m * vb)[(0, 0)];
    let qbb = (vb.transpose() * conic.m * vb)[(0, 0)];
    homogeneous_quadratic_roots(qaa, qab, qbb).map(|(s, t)| a.scale(s).add(&b.scale(t)))
}

/// A point on the line `t` other than `u` (chordally farthest of the three
/// coordinate sections).
fn other_point_on_line(t: &PlaneLine, u: &PlanePoint) -> PlanePoint {
    let mut best: Option<(f64, PlanePoint)> = None;
    for i in 0..3 {
        let mut e = [zero(); 3];
        e[i] = one();
        let cand = cross(t, &ProjectivePoint::new(e));
        if cand.max_norm() < 1e-14 {
            continue;
        }
        let d = cand.chordal_distance(u);
        if best.as_ref().map(|(bd, _)| d > *bd).unwrap_or(true) {
            best = Some((d, cand));
        }
    }
    best.expect("line has a nonzero coordinate section").1
}

/// The residual intersection of line `t` with the conic, given the known
/// intersection point `u`. Returns `u` itself when the line is tangent at `u`.
pub fn second_intersection(
    conic: &Conic,
    t: &PlaneLine,
    u: &PlanePoint,
    ctx: &ToleranceContext,
) -> Result<PlanePoint> {
    let un = u.normalize()?;
    let tn = t.normalize()?;
    let incidence = tn.dot(&un).norm();
    if incidence > ctx.closure_tol * 100.0 {
        return Err(GeomError::PointNotIncident);
    }
    let c = conic.normalized()?;
    if c.incidence_residual(&un) > ctx.closure_tol * 100.0 {
        return Err(GeomError::PointNotIncident);
    }
    let b = other_point_on_line(&tn, &un);
    let vu = Vector3::from_row_slice(un.coords());
    let vb = Vector3::from_row_slice(b.coords());
    let qub = (vu.transpose() * c.m * vb)[(0, 0)];
    let qbb = (vb.transpose() * c.m * vb)[(0, 0)];
    // q(u + s b) = 2 s q(u,b) + s^2 q(b,b); residual root s = -2 q(u,b)/q(b,b)
    let second = un.scale(qbb).add(&b.scale(-2.0 * qub));
    if second.max_norm() < 1e-14 * (un.max_norm() + b.max_norm()) {
        // tangent line: residual root equals u
        return Ok(un);
    }
    second.normalize()
}

/// One Poncelet pair state: a vertex on `D` and a tangent line to `C`
/// through it.
#[derive(Debug, Clone, Copy)]
pub struct TangentChainState {
    pub u: PlanePoint,
    pub line: PlaneLine,
}

impl TangentChainState {
    pub fn new(u: PlanePoint, line: PlaneLine) -> Self {
        Self { u, line }
    }

    /// Largest incidence/tangency violation of the state invariants.
    pub fn invariant_residual(&self, inscribed: &Conic, carrier: &Conic) -> f64 {
        let on_carrier = carrier.incidence_residual(&self.u);
        let tangent = inscribed.tangency_residual(&self.line);
        let on_line = match (self.line.normalize(), self.u.normalize()) {
            (Ok(l), Ok(u)) => l.dot(&u).norm(),
            _ => f64::NAN,
        };
        on_carrier.max(tangent).max(on_line)
    }

    pub fn distance(&self, other: &TangentChainState) -> f64 {
        let du = self.u.proj_distance(&other.u).unwrap_or(f64::NAN);
        let dl = self.line.proj_distance(&other.line).unwrap_or(f64::NAN);
        du.max(dl)
    }
}

pub(crate) struct StepOutcome {
    pub state: TangentChainState,
    pub flagged: bool,
}

fn step_inner(
    inscribed: &Conic,
    carrier: &Conic,
    state: &TangentChainState,
    ctx: &ToleranceContext,
) -> Result<StepOutcome> {
    let u_next = second_intersection(carrier, &state.line, &state.u, ctx)?;
    let (t1, t2, coincident) = tangent_lines_from_point(inscribed, &u_next, ctx)?;
    let d1 = t1.proj_distance(&state.line).unwrap_or(f64::INFINITY);
    let d2 = t2.proj_distance(&state.line).unwrap_or(f64::INFINITY);
    let next_line = if d1 < d2 { t2 } else { t1 };
    let flagged = coincident || d1.min(d2) > 1e-6;
    Ok(StepOutcome {
        state: TangentChainState::new(u_next, next_line),
        flagged,
    })
}

/// One step of the Poncelet process: move along the current tangent to the
/// second point on the carrier, then switch to the other tangent of the
/// inscribed conic.
pub fn poncelet_step(
    inscribed: &Conic,
    carrier: &Conic,
    state: &TangentChainState,
    ctx: &ToleranceContext,
) -> Result<TangentChainState> {
    if inscribed.proj_eq(carrier, ctx) {
        return Err(GeomError::PencilDegenerate);
    }
    Ok(step_inner(inscribed, carrier, state, ctx)?.state)
}

/// Inverse of `poncelet_step`: switch tangents first, then walk back along
/// the new tangent.
pub fn poncelet_step_back(
    inscribed: &Conic,
    carrier: &Conic,
    state: &TangentChainState,
    ctx: &ToleranceContext,
) -> Result<TangentChainState> {
    if inscribed.proj_eq(carrier, ctx) {
        return Err(GeomError::PencilDegenerate);
    }
    let (t1, t2, _) = tangent_lines_from_point(inscribed, &state.u, ctx)?;
    let d1 = t1.proj_distance(&state.line).unwrap_or(f64::INFINITY);
    let d2 = t2.proj_distance(&state.line).unwrap_or(f64::INFINITY);
    let prev_line = if d1 < d2 { t2 } else { t1 };
    let u_prev = second_intersection(carrier, &prev_line, &state.u, ctx)?;
    Ok(TangentChainState::new(u_prev, prev_line))
}

/// Iterates the Poncelet process up to `n_max` steps and reports the
/// smallest return order, or the open chain with its final residual.
pub fn poncelet_chain(
    inscribed: &Conic,
    carrier: &Conic,
    start: &TangentChainState,
    n_max: u32,
    ctx: &ToleranceContext,
) -> Result<ChainReport<TangentChainState>> {
    if inscribed.proj_eq(carrier, ctx) {
        return Err(GeomError::PencilDegenerate);
    }
    let mut elements = vec![*start];
    let mut state = *start;
    let mut flagged = Vec::new();
    let mut residual = f64::INFINITY;
    for k in 1..=n_max {
        let out = step_inner(inscribed, carrier, &state, ctx)?;
        state = out.state;
        if out.flagged {
            flagged.push(k);
        }
        residual = state.distance(start);
        if residual < ctx.closure_tol {
            let mut rep = ChainReport::closed(elements, k, residual);
            rep.flagged_steps = flagged;
            return Ok(rep);
        }
        elements.push(state);
    }
    let mut rep = ChainReport::open(elements, residual);
    rep.flagged_steps = flagged;
    Ok(rep)
}

/// A pencil of two distinct conics.
#[derive(Debug, Clone, Copy)]
pub struct ConicPencil {
    pub c: Conic,
    pub d: Conic,
}

impl ConicPencil {
    pub fn new(c: Conic, d: Conic, ctx: &ToleranceContext) -> Result<Self> {
        if c.proj_eq(&d, ctx) {
            return Err(GeomError::PencilDegenerate);
        }
        Ok(Self { c, d })
    }

    pub fn member(&self, lambda: Complex64, mu: Complex64) -> Conic {
        Conic::new(self.c.m.map(|x| x * lambda) + self.d.m.map(|x| x * mu))
    }

    /// Coefficients (ascending in lambda) of det(lambda C + D).
    pub fn discriminant_cubic(&self) -> Vec<Complex64> {
        let c = self.c;
        let d = self.d;
        crate::num::poly_from_fn(3, |lambda| {
            (c.m.map(|x| x * lambda) + d.m).determinant()
        })
    }

    /// Generic iff the homogeneous discriminant cubic has three simple roots.
    pub fn is_generic(&self, ctx: &ToleranceContext) -> bool {
        let coeffs = self.discriminant_cubic();
        let max_mag = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max_mag == 0.0 {
            return false;
        }
        // a vanishing leading coefficient is a root at infinity
        let infinite_root = coeffs[3].norm() < 1e-10 * max_mag;
        match crate::roots::poly_roots_tol(&coeffs, ctx.rel_tol) {
            Ok(roots) => {
                let finite_simple = roots.iter().all(|r| r.multiplicity == 1);
                let total: usize = roots.iter().map(|r| r.multiplicity).sum();
                if infinite_root {
                    finite_simple && total == 2
                } else {
                    finite_simple && total == 3
                }
            }
            Err(_) => false,
        }
    }
}

/// Seedable random conic with coefficients in the unit disk; resampled until
/// smooth.
pub fn random_conic(rng: &mut ChaCha8Rng, ctx: &ToleranceContext) -> Conic {
    loop {
        let mut m = Matrix3::zeros();
        for i in 0..3 {
            for j in i..3 {
                let v = random_unit_disk(rng);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        let c = Conic::new(m);
        if c.is_smooth(ctx) && c.normalized().map(|n| n.det().norm() > 1e-3).unwrap_or(false) {
            return c;
        }
    }
}

/// Seedable random point on a conic (intersection with a random chord).
pub fn random_point_on_conic(
    conic: &Conic,
    rng: &mut ChaCha8Rng,
    ctx: &ToleranceContext,
) -> PlanePoint {
    loop {
        let a = PlanePoint::new([
            random_unit_disk(rng),
            random_unit_disk(rng),
            random_unit_disk(rng),
        ]);
        let b = PlanePoint::new([
            random_unit_disk(rng),
            random_unit_disk(rng),
            random_unit_disk(rng),
        ]);
        if a.chordal_distance(&b) < 1e-3 {
            continue;
        }
        let [p, q] = line_conic_intersections(conic, &a, &b);
        for cand in [p, q] {
            if let Ok(n) = cand.normalize() {
                if conic.incidence_residual(&n) < ctx.rel_tol * 100.0 {
                    return n;
                }
            }
        }
    }
}

/// A valid chain start on a conic pair: a seeded random vertex on the
/// carrier together with one tangent to the inscribed conic.
pub fn random_chain_start(
    inscribed: &Conic,
    carrier: &Conic,
    rng: &mut ChaCha8Rng,
    ctx: &ToleranceContext,
) -> Result<TangentChainState> {
    for _ in 0..64 {
        let u = random_point_on_conic(carrier, rng, ctx);
        let (t1, _, coincident) = tangent_lines_from_point(inscribed, &u, ctx)?;
        if !coincident {
            return Ok(TangentChainState::new(u, t1));
        }
    }
    Err(GeomError::DegenerateConfiguration)
}
