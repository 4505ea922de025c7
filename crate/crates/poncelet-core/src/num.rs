//! Scalar helpers shared by every module: complex shorthands, polynomial
//! interpolation from samples, seeded sampling and a small derivative-free
//! minimizer used by the tuning and counting engines.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const TAU: f64 = std::f64::consts::TAU;

/// Shorthand constructor.
#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

#[inline]
pub fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Deterministic generator for a given seed. All randomness in the crate goes
/// through this so reports are reproducible.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform sample from the closed complex unit disk.
pub fn random_unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = rng.random::<f64>().sqrt();
    let phi = TAU * rng.random::<f64>();
    Complex64::from_polar(r, phi)
}

/// Recovers the coefficients (ascending order, length `degree + 1`) of a
/// polynomial of known degree from its values on the scaled roots of unity.
/// This is an inverse DFT, numerically gentle for the small degrees used here.
pub fn poly_from_fn(degree: usize, mut f: impl FnMut(Complex64) -> Complex64) -> Vec<Complex64> {
    let n = degree + 1;
    let samples: Vec<Complex64> = (0..n)
        .map(|k| f(Complex64::from_polar(1.0, TAU * k as f64 / n as f64)))
        .collect();
    (0..n)
        .map(|j| {
            let mut acc = zero();
            for (k, s) in samples.iter().enumerate() {
                acc += s * Complex64::from_polar(1.0, -TAU * (j * k) as f64 / n as f64);
            }
            acc / n as f64
        })
        .collect()
}

/// Evaluates an ascending-coefficient polynomial by Horner's rule.
pub fn poly_eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Synthetic division of `coeffs` (ascending) by `(x - root)`.
/// Returns the quotient; the remainder is discarded.
pub fn poly_deflate(coeffs: &[Complex64], root: Complex64) -> Vec<Complex64> {
    let n = coeffs.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut quot = vec![zero(); n - 1];
    let mut carry = coeffs[n - 1];
    for i in (0..n - 1).rev() {
        quot[i] = carry;
        carry = coeffs[i] + carry * root;
    }
    quot
}

/// Multiplies two ascending-coefficient polynomials.
pub fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Solves a*x^2 + b*x + c = 0 over the complex numbers, returning the root
/// pair in a numerically stable way (Viete for the small root).
pub fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // pick the sign that avoids cancellation in -b -+ disc
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    (q / a, c / q)
}

/// Homogeneous quadratic A s^2 + 2 B s t + C t^2: returns the two root
/// directions (s : t), valid even when A or C vanish.
pub fn homogeneous_quadratic_roots(
    a: Complex64,
    b: Complex64,
    c: Complex64,
) -> [(Complex64, Complex64); 2] {
    let scale = a.norm().max(b.norm()).max(c.norm());
    if scale == 0.0 {
        return [(one(), zero()), (zero(), one())];
    }
    if a.norm() < 1e-14 * scale {
        // root (1 : 0) plus the residual linear root 2 B s + C t = 0
        if b.norm() < 1e-14 * scale {
            return [(one(), zero()), (one(), zero())];
        }
        return [(one(), zero()), (c, -2.0 * b)];
    }
    let disc = (b * b - a * c).sqrt();
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -(b + disc)
    } else {
        -(b - disc)
    };
    if q.norm() < 1e-14 * scale {
        return [(zero(), one()), (zero(), one())];
    }
    [(q, a), (c, q)]
}

/// Quasi-uniform deterministic sample of `n` points in the complex disk of
/// radius `r` (sunflower layout).
pub fn sunflower_disk(n: usize, r: f64) -> Vec<Complex64> {
    let golden = TAU / (1.618_033_988_749_895_f64 * 1.618_033_988_749_895_f64);
    (0..n)
        .map(|k| {
            let rad = r * ((k as f64 + 0.5) / n as f64).sqrt();
            Complex64::from_polar(rad, golden * k as f64)
        })
        .collect()
}

/// Nelder-Mead on the plane, used to refine closure-defect minima. The
/// objective is a nonnegative real function of a complex parameter.
pub fn nelder_mead(
    f: &mut dyn FnMut(Complex64) -> f64,
    start: Complex64,
    scale: f64,
    max_iter: usize,
) -> (Complex64, f64) {
    let ev = |f: &mut dyn FnMut(Complex64) -> f64, p: [f64; 2]| f(cx(p[0], p[1]));
    let mut pts = [
        [start.re, start.im],
        [start.re + scale, start.im],
        [start.re, start.im + scale],
    ];
    let mut vals = [0.0f64; 3];
    for i in 0..3 {
        vals[i] = ev(f, pts[i]);
    }
    for _ in 0..max_iter {
        // order ascending
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        let (best, mid, worst) = (idx[0], idx[1], idx[2]);
        let spread = (pts[best][0] - pts[worst][0]).hypot(pts[best][1] - pts[worst][1]);
        if spread < 1e-14 * (1.0 + pts[best][0].abs() + pts[best][1].abs()) {
            break;
        }
        let centroid = [
            0.5 * (pts[best][0] + pts[mid][0]),
            0.5 * (pts[best][1] + pts[mid][1]),
        ];
        let dir = [centroid[0] - pts[worst][0], centroid[1] - pts[worst][1]];
        let refl = [centroid[0] + dir[0], centroid[1] + dir[1]];
        let fr = ev(f, refl);
        if fr < vals[best] {
            let exp = [centroid[0] + 2.0 * dir[0], centroid[1] + 2.0 * dir[1]];
            let fe = ev(f, exp);
            if fe < fr {
                pts[worst] = exp;
                vals[worst] = fe;
            } else {
                pts[worst] = refl;
                vals[worst] = fr;
            }
        } else if fr < vals[mid] {
            pts[worst] = refl;
            vals[worst] = fr;
        } else {
            let contr = [centroid[0] + 0.5 * dir[0], centroid[1] + 0.5 * dir[1]];
            let fc = ev(f, contr);
            if fc < vals[worst] {
                pts[worst] = contr;
                vals[worst] = fc;
            } else {
                for i in [mid, worst] {
                    pts[i] = [
                        0.5 * (pts[i][0] + pts[best][0]),
                        0.5 * (pts[i][1] + pts[best][1]),
                    ];
                    vals[i] = ev(f, pts[i]);
                }
            }
        }
    }
    let mut bi = 0;
    for i in 1..3 {
        if vals[i] < vals[bi] {
            bi = i;
        }
    }
    (cx(pts[bi][0], pts[bi][1]), vals[bi])
}
