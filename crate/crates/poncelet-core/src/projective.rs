//! Complex projective points, the canonical normal form and the projective
//! comparisons every other module builds on.

use crate::error::{GeomError, Result};
use crate::num::{cx, one};
use crate::tolerance::ToleranceContext;
use num_complex::Complex64;

/// A point of complex projective space with `N` homogeneous coordinates
/// (ambient dimension `N - 1`). Immutable value type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint<const N: usize> {
    coords: [Complex64; N],
}

/// Point of the projective plane.
pub type PlanePoint = ProjectivePoint<3>;
/// Line of the projective plane, stored in dual coordinates.
pub type PlaneLine = ProjectivePoint<3>;
/// Point of projective 3-space.
pub type SpacePoint = ProjectivePoint<4>;
/// Plane of projective 3-space, stored in dual coordinates.
pub type SpacePlane = ProjectivePoint<4>;

impl<const N: usize> ProjectivePoint<N> {
    pub fn new(coords: [Complex64; N]) -> Self {
        Self { coords }
    }

    pub fn from_re(re: [f64; N]) -> Self {
        Self {
            coords: re.map(|x| cx(x, 0.0)),
        }
    }

    pub fn coords(&self) -> &[Complex64; N] {
        &self.coords
    }

    pub fn max_norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Canonical form: divides by the largest-magnitude coordinate (lowest
    /// index on ties) and pins that coordinate to exactly 1. Idempotent.
    pub fn normalize(&self) -> Result<Self> {
        let mut best = 0usize;
        let mut best_mag = self.coords[0].norm();
        for (i, c) in self.coords.iter().enumerate().skip(1) {
            let m = c.norm();
            if m > best_mag {
                best = i;
                best_mag = m;
            }
        }
        if best_mag == 0.0 || !best_mag.is_finite() {
            return Err(GeomError::ZeroVector);
        }
        let pivot = self.coords[best];
        let mut out = self.coords.map(|c| c / pivot);
        out[best] = one();
        Ok(Self { coords: out })
    }

    /// Projective equality: normalized forms differ by less than `rel_tol`
    /// in the max-norm.
    pub fn proj_eq(&self, other: &Self, ctx: &ToleranceContext) -> bool {
        self.proj_distance(other)
            .map(|d| d < ctx.rel_tol)
            .unwrap_or(false)
    }

    /// Max-norm distance between normalized forms. The closure residual
    /// reported by every chain.
    pub fn proj_distance(&self, other: &Self) -> Result<f64> {
        let a = self.normalize()?;
        let b = other.normalize()?;
        Ok(a.coords
            .iter()
            .zip(b.coords.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// Scale-free chordal distance sin(angle), computed from the wedge
    /// product so it stays accurate down to machine precision near zero.
    /// Smooth; the closure defect used by scans and minimization.
    pub fn chordal_distance(&self, other: &Self) -> f64 {
        let na = self.max_norm();
        let nb = other.max_norm();
        if na == 0.0 || nb == 0.0 || !na.is_finite() || !nb.is_finite() {
            return 1.0;
        }
        let mut wedge = 0.0;
        let mut dot = 0.0;
        for i in 0..N {
            let ai = self.coords[i] / na;
            dot += ai.norm_sqr();
            for j in (i + 1)..N {
                let minor = ai * (other.coords[j] / nb) - (self.coords[j] / na) * (other.coords[i] / nb);
                wedge += minor.norm_sqr();
            }
        }
        let mut dot_b = 0.0;
        for j in 0..N {
            dot_b += (other.coords[j] / nb).norm_sqr();
        }
        (wedge / (dot * dot_b)).sqrt().min(1.0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coords: self.coords.map(|c| c * s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coords = self.coords;
        for (c, o) in coords.iter_mut().zip(other.coords.iter()) {
            *c += o;
        }
        Self { coords }
    }

    /// Bilinear pairing sum_i a_i b_i (no conjugation).
    pub fn dot(&self, other: &Self) -> Complex64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_finite(&self) -> bool {
        self.coords
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// Cross product in C^3; the line through two plane points, or the point on
/// two plane lines.
pub fn cross(a: &ProjectivePoint<3>, b: &ProjectivePoint<3>) -> ProjectivePoint<3> {
    let p = a.coords();
    let q = b.coords();
    ProjectivePoint::new([
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ])
}

/// A line in projective 3-space, stored as two distinct spanning points.
#[derive(Debug, Clone, Copy)]
pub struct Line3 {
    a: SpacePoint,
    b: SpacePoint,
}

impl Line3 {
    pub fn new(a: SpacePoint, b: SpacePoint) -> Result<Self> {
        if a.chordal_distance(&b) < 1e-13 {
            return Err(GeomError::DegenerateConfiguration);
        }
        Ok(Self { a, b })
    }

    pub fn span(&self) -> (&SpacePoint, &SpacePoint) {
        (&self.a, &self.b)
    }

    pub fn point_at(&self, s: Complex64, t: Complex64) -> SpacePoint {
        self.a.scale(s).add(&self.b.scale(t))
    }

    /// Pluecker coordinates, the canonical line representative used for
    /// comparisons and deterministic ordering.
    pub fn pluecker(&self) -> ProjectivePoint<6> {
        let p = self.a.coords();
        let q = self.b.coords();
        ProjectivePoint::new([
            p[0] * q[1] - p[1] * q[0],
            p[0] * q[2] - p[2] * q[0],
            p[0] * q[3] - p[3] * q[0],
            p[1] * q[2] - p[2] * q[1],
            p[1] * q[3] - p[3] * q[1],
            p[2] * q[3] - p[3] * q[2],
        ])
    }

    pub fn proj_eq(&self, other: &Line3, ctx: &ToleranceContext) -> bool {
        self.pluecker().proj_eq(&other.pluecker(), ctx)
    }

    /// Scale-free incidence measure: 0 iff the two lines meet. The 4x4
    /// determinant of normalized spanning points.
    pub fn meet_residual(&self, other: &Line3) -> f64 {
        let rows: [SpacePoint; 4] = [self.a, self.b, other.a, other.b];
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, r) in rows.iter().enumerate() {
            let n = match r.normalize() {
                Ok(p) => p,
                Err(_) => return f64::NAN,
            };
            m[i] = *n.coords();
        }
        det4(&m).norm()
    }
}

fn det4(m: &[[Complex64; 4]; 4]) -> Complex64 {
    let det3 = |a: [[Complex64; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for col in 0..4 {
        let mut minor = [[Complex64::new(0.0, 0.0); 3]; 3];
        for r in 1..4 {
            let mut cc = 0;
            for c in 0..4 {
                if c == col {
                    continue;
                }
                minor[r - 1][cc] = m[r][c];
                cc += 1;
            }
        }
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * m[0][col] * det3(minor);
    }
    acc
}

/// Lexicographic comparison of normalized coordinates (re then im),
/// a deterministic tie-break when two geometric answers are unordered.
pub fn lex_cmp<const N: usize>(
    a: &ProjectivePoint<N>,
    b: &ProjectivePoint<N>,
) -> std::cmp::Ordering {
    let (na, nb) = match (a.normalize(), b.normalize()) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return std::cmp::Ordering::Equal,
    };
    for (x, y) in na.coords().iter().zip(nb.coords().iter()) {
        match x.re.total_cmp(&y.re) {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
        match x.im.total_cmp(&y.im) {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}
