//! Temporary diagnostics (deleted before finishing).

use poncelet_core::conic::{
    poncelet_chain, random_point_on_conic, tangent_lines_from_point, Conic, ConicPencil,
    TangentChainState,
};
use poncelet_core::counting::random_generic_pencil;
use poncelet_core::num::{nelder_mead, one, seeded_rng, sunflower_disk};
use poncelet_core::projective::ProjectivePoint;
use poncelet_core::ToleranceContext;
use num_complex::Complex64;

fn defect(
    pencil: &ConicPencil,
    carrier: &Conic,
    v0: &poncelet_core::projective::PlanePoint,
    n: u32,
    lambda: Complex64,
    mu: Complex64,
    ctx: &ToleranceContext,
    dual: bool,
) -> f64 {
    let member = match pencil.member(lambda, mu).normalized() {
        Ok(m) => m,
        Err(_) => return f64::INFINITY,
    };
    if member.det().norm() < 1e-6 {
        return f64::INFINITY;
    }
    let inscribed = if dual { member.dual() } else { member };
    let Ok((t1, t2, coin)) = tangent_lines_from_point(&inscribed, v0, ctx) else {
        return f64::INFINITY;
    };
    if coin {
        return f64::INFINITY;
    }
    let mut best = f64::INFINITY;
    for t in [t1, t2] {
        let start = TangentChainState::new(*v0, t);
        let mut state = start;
        let mut ok = true;
        for _ in 0..n {
            match poncelet_core::conic::poncelet_step(&inscribed, &carrier, &state, ctx) {
                Ok(s) => state = s,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            best = best.min(
                state
                    .u
                    .chordal_distance(&start.u)
                    .max(state.line.chordal_distance(&start.line)),
            );
        }
    }
    best
}

#[test]
#[ignore]
fn debug_scan_seed0() {
    let ctx = ToleranceContext::default();
    for (n, dual) in [(3u32, false), (4, false), (3, true), (4, true)] {
        let (c, d) = random_generic_pencil(0, &ctx);
        let pencil = ConicPencil::new(c, d, &ctx).unwrap();
        let carrier = if dual { d.dual() } else { d };
        let mut rng = seeded_rng(0 ^ 0x9e37_79b9_7f4a_7c15);
        let v0 = random_point_on_conic(&carrier, &mut rng, &ctx);

        // very fine scan, many seeds
        let mut params: Vec<(Complex64, Complex64)> = Vec::new();
        for z in sunflower_disk(8192, 1.2) {
            params.push((z, one()));
            params.push((one(), z));
        }
        let defects: Vec<f64> = params
            .iter()
            .map(|(l, m)| defect(&pencil, &carrier, &v0, n, *l, *m, &ctx, dual))
            .collect();
        let mut order: Vec<usize> = (0..params.len()).collect();
        order.sort_by(|&i, &j| defects[i].total_cmp(&defects[j]));
        let mut zeros: Vec<ProjectivePoint<2>> = Vec::new();
        let mut tried = 0;
        for &i in order.iter() {
            if tried > 400 || !defects[i].is_finite() {
                break;
            }
            tried += 1;
            let (l0, m0) = params[i];
            let use_mu = l0.norm() > m0.norm();
            let z0 = if use_mu { m0 / l0 } else { l0 / m0 };
            let mut f = |z: Complex64| {
                if use_mu {
                    defect(&pencil, &carrier, &v0, n, one(), z, &ctx, dual)
                } else {
                    defect(&pencil, &carrier, &v0, n, z, one(), &ctx, dual)
                }
            };
            let (z1, v1) = nelder_mead(&mut f, z0, 0.05, 300);
            let (z2, v2) = nelder_mead(&mut f, z1, 1e-4, 200);
            let (z, v) = if v2 < v1 { (z2, v2) } else { (z1, v1) };
            if v < 1e-8 {
                let pt = if use_mu {
                    ProjectivePoint::new([one(), z])
                } else {
                    ProjectivePoint::new([z, one()])
                };
                if zeros.iter().all(|a| a.chordal_distance(&pt) > 1e-5) {
                    // check exact order via divisor defects
                    let mut div_ok = true;
                    for dd in 1..n {
                        if n % dd == 0 {
                            let vd = if use_mu {
                                defect(&pencil, &carrier, &v0, dd, one(), z, &ctx, dual)
                            } else {
                                defect(&pencil, &carrier, &v0, dd, z, one(), &ctx, dual)
                            };
                            if vd < 1e-4 {
                                div_ok = false;
                            }
                        }
                    }
                    // also classic verification for comparison
                    let member = if use_mu {
                        pencil.member(one(), z)
                    } else {
                        pencil.member(z, one())
                    }
                    .normalized()
                    .unwrap();
                    let inscribed = if dual { member.dual() } else { member };
                    let (t1, _, _) = tangent_lines_from_point(&inscribed, &v0, &ctx).unwrap();
                    let rep = poncelet_chain(
                        &inscribed,
                        &carrier,
                        &TangentChainState::new(v0, t1),
                        n,
                        &ctx,
                    );
                    let repinfo = rep
                        .map(|r| format!("closed={} order={:?} res={:.2e}", r.closed, r.order, r.residual))
                        .unwrap_or_else(|e| format!("err {e}"));
                    println!(
                        "n={n} dual={dual} zero at {:?} v={v:.2e} div_ok={div_ok} chain: {}",
                        pt.normalize().unwrap().coords(),
                        repinfo
                    );
                    if div_ok {
                        zeros.push(pt);
                    }
                }
            }
        }
        println!("n={n} dual={dual}: found {} zeros\n", zeros.len());
    }
}

#[test]
#[ignore]
fn debug_dense_grid_seed0() {
    let ctx = ToleranceContext::default();
    for (n, dual) in [(3u32, false), (3, true), (4, true)] {
        let (c, d) = random_generic_pencil(0, &ctx);
        let pencil = ConicPencil::new(c, d, &ctx).unwrap();
        let carrier = if dual { d.dual() } else { d };
        let mut rng = seeded_rng(0 ^ 0x9e37_79b9_7f4a_7c15);
        let v0 = random_point_on_conic(&carrier, &mut rng, &ctx);
        let v1 = random_point_on_conic(&carrier, &mut rng, &ctx);

        // dense grid on both charts; record strict local minima below 0.05
        let m = 220usize;
        for chart in 0..2 {
            let mut vals = vec![f64::INFINITY; m * m];
            for iy in 0..m {
                for ix in 0..m {
                    let z = Complex64::new(
                        -1.25 + 2.5 * ix as f64 / (m - 1) as f64,
                        -1.25 + 2.5 * iy as f64 / (m - 1) as f64,
                    );
                    let (l, mu) = if chart == 0 { (z, one()) } else { (one(), z) };
                    let d0 = defect(&pencil, &carrier, &v0, n, l, mu, &ctx, dual);
                    let d1 = defect(&pencil, &carrier, &v1, n, l, mu, &ctx, dual);
                    vals[iy * m + ix] = d0.min(d1);
                }
            }
            let mut minima = Vec::new();
            for iy in 1..m - 1 {
                for ix in 1..m - 1 {
                    let v = vals[iy * m + ix];
                    if !v.is_finite() || v > 0.05 {
                        continue;
                    }
                    let mut is_min = true;
                    for dy in -1i32..=1 {
                        for dx in -1i32..=1 {
                            if dx == 0 && dy == 0 {
                                continue;
                            }
                            let w = vals[(iy as i32 + dy) as usize * m + (ix as i32 + dx) as usize];
                            if w < v {
                                is_min = false;
                            }
                        }
                    }
                    if is_min {
                        let z = Complex64::new(
                            -1.25 + 2.5 * ix as f64 / (m - 1) as f64,
                            -1.25 + 2.5 * iy as f64 / (m - 1) as f64,
                        );
                        minima.push((z, v));
                    }
                }
            }
            let inf_count = vals.iter().filter(|v| !v.is_finite()).count();
            println!("n={n} dual={dual} chart={chart}: {} grid minima, {} INF cells", minima.len(), inf_count);
            for (z, v) in &minima {
                println!("   min at {z:.4} defect {v:.3e}");
            }
        }
        println!();
    }
}

#[test]
#[ignore]
fn debug_dual_formulation_square() {
    let ctx = ToleranceContext::default();
    let o = one();
    // D: unit circle; M: concentric radius sqrt(2) -> square: vertices on M,
    // sides tangent to D, order 4.
    let d = Conic::from_diagonal(o, o, Complex64::new(-1.0, 0.0));
    let m = Conic::from_diagonal(o, o, Complex64::new(-2.0, 0.0));

    // direct: D inscribed into M
    let mut rng = seeded_rng(42);
    let v = random_point_on_conic(&m, &mut rng, &ctx);
    let (t1, _, _) = tangent_lines_from_point(&d, &v, &ctx).unwrap();
    let rep = poncelet_chain(&d, &m, &TangentChainState::new(v, t1), 8, &ctx).unwrap();
    println!("direct: closed={} order={:?} res={:.2e}", rep.closed, rep.order, rep.residual);

    // dual: M* inscribed into D*
    let md = m.dual();
    let dd = d.dual();
    let vstar = random_point_on_conic(&dd, &mut rng, &ctx);
    let (s1, s2, coin) = tangent_lines_from_point(&md, &vstar, &ctx).unwrap();
    println!("coin={coin}");
    for s in [s1, s2] {
        let rep = poncelet_chain(&md, &dd, &TangentChainState::new(vstar, s), 8, &ctx).unwrap();
        println!("dual:   closed={} order={:?} res={:.2e}", rep.closed, rep.order, rep.residual);
    }
}
