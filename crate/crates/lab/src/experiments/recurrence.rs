use monodromy::continuation::{
    build_branch_table, default_base, recurrence_detect, sigma_values, AnalyticElement, Element, RecurrenceRelation,
};
use monodromy::convolution::{eq1_rhs, monodromy_difference, pair_term};
use monodromy::numerics::Point;
use monodromy::zoo::{
    power_sigma_exact, vandermonde_recurrence, AlgebraicElement, AlgebroGeometricElement, LogBranch, PowerBranch,
    ZooDescriptor,
};
use monodromy::C64;
use serde_json::json;

use super::{c, cjson, guarded, par_cases, Ctx};
use crate::error::LabResult;
use crate::report::Case;

/// Second difference `(Σ^{N+2d} − 2Σ^{N+d} + Σ^N)H` of the elliptic pair at
/// its base point, as a germ.
pub fn recurrence_algebraic(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let d = ZooDescriptor::power(1.0, 0.5);
    let h = ctx.hadamard(&d, &d)?;
    let tol = ctx.config.tol("residual", 1e-4);
    let one = c(1.0);
    let period = 4;
    let base = default_base(h.as_ref(), one);
    let table = build_branch_table(h.as_ref(), one, base, 0, (2 + 2 * period) as i32)?;
    let mut cases = Vec::new();
    for n in [1usize, 2] {
        let b = |k: usize| &table.branches[&(k as i32)];
        let upper = b(n + 2 * period).sub(b(n + period));
        let lower = b(n + period).sub(b(n));
        // Coefficient distance weighted on a disk of a quarter of the loop radius.
        let residual = upper.distance(&lower, 0.25 * base.dist(one));
        let inputs = json!({ "d": period, "N": n, "base": cjson(base.value()) });
        let first = |g: &monodromy::germs::Germ| g.coefficients[0];
        cases.push(
            Case::with_residual(format!("N{n}"), inputs, first(&upper), first(&lower), residual, tol)
                .with_err(vec![upper.err_bound + lower.err_bound]),
        );
    }
    Ok(cases)
}

/// `(1/N)(Σ^N − Id)H − L` for `H = (1−z)^{-1/3} ⊙ (1−z)^{-1/2}` (`d = 6`):
/// the error at `N = 16` is half the error at `N = 8`.
pub fn birkhoff_limit(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let one = c(1.0);
    let band = ctx.config.tol("ratio-band", 0.25);
    let points = ctx.annulus_points(one, ctx.config.samples_or(3));
    let mut cases = Vec::new();
    let runs = [(ZooDescriptor::power(1.0, 1.0 / 3.0), ZooDescriptor::power(1.0, 0.5), 6usize, "third-half")];
    for (fd, gd, d, label) in runs {
        let (f, g) = (fd.build()?, gd.build()?);
        let h = ctx.hadamard(&fd, &gd)?;
        for (i, z) in points.iter().enumerate() {
            let inputs = json!({ "pair": label, "d": d, "z": cjson(z.value()) });
            let id = format!("{label}-z{i}");
            cases.push(guarded(id.clone(), inputs.clone(), band, || {
                let limit = eq1_rhs(&f, &g, one, d, *z, &ctx.quad)? / d as f64;
                let err = |n: usize| -> monodromy::Result<C64> {
                    Ok(monodromy_difference(h.as_ref(), one, *z, n as i32)?.0 / n as f64 - limit)
                };
                let (e8, e16) = (err(8)?, err(16)?);
                let ratio = e16.norm() / e8.norm();
                let mut inputs = inputs.clone();
                inputs["limit"] = cjson(limit);
                inputs["ratio"] = json!(ratio);
                Ok(Case::with_residual(id.clone(), inputs, e16, e8 * 0.5, (ratio - 0.5).abs() / 0.5, band))
            }));
        }
    }
    // Informational: for the elliptic pair the monodromy is unipotent and
    // (1/N)(Σ^N − Id)H equals its limit for every N.
    let d = ZooDescriptor::power(1.0, 0.5);
    let f = d.build()?;
    let h = ctx.hadamard(&d, &d)?;
    let z = points[0];
    let tol = ctx.config.tol("elliptic-limit", 1e-6);
    let inputs = json!({ "pair": "elliptic", "d": 4, "z": cjson(z.value()), "informational": true });
    cases.push(guarded("elliptic-exact-limit".into(), inputs.clone(), tol, || {
        let limit = eq1_rhs(&f, &f, one, 4, z, &ctx.quad)? / 4.0;
        let avg = monodromy_difference(h.as_ref(), one, z, 8)?.0 / 8.0;
        Ok(Case::compare("elliptic-exact-limit", inputs.clone(), avg, limit, tol))
    }));
    Ok(cases)
}

/// The `(D_n)`-adic decomposition at `n = 2` with `d_1 = d_2 = 2`, against
/// the direct rhs with actual loops, for `N ≤ 10`.
pub fn dn_adic_n2(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let one = c(1.0);
    let tol = ctx.config.tol("residual", 1e-4);
    let f = ZooDescriptor::power(1.0, 0.5).build()?;
    let z = ctx.annulus_points(one, 1)[0];
    let (d1, d2) = (2usize, 2usize);
    let (big_d1, big_d2) = (d2, d1 * d2);
    // Terms with branches reduced by periodicity, T_k = T_{k mod d}.
    let reduced: Vec<C64> = (0..d1.max(d2))
        .map(|k| pair_term(&f, &f, one, one, k as i32, z, &ctx.quad))
        .collect::<monodromy::Result<_>>()?;
    let t = |k: usize| reduced[k % d1];
    let cross: C64 = (0..d1).flat_map(|l| (0..big_d1).map(move |k| (l, k))).map(|(l, k)| {
        // Printed form pairs Σ^l of the first factor with Σ^k of the second.
        pair_term_mixed(&f, l, k, z, ctx).unwrap_or(C64::new(f64::NAN, 0.0))
    }).sum();
    let ns: Vec<usize> = (1..=10).collect();
    Ok(par_cases(&ns, |&n| {
        let (k2, r2) = (n / big_d2, n % big_d2);
        let (k1, k0) = (r2 / big_d1, r2 % big_d1);
        let inputs = json!({ "N": n, "K2": k2, "K1": k1, "K0": k0, "z": cjson(z.value()) });
        let id = format!("N{n}");
        guarded(id.clone(), inputs.clone(), tol, || {
            let decomposed = k2 as f64 * (0..big_d2).map(t).sum::<C64>()
                + k1 as f64 * (0..big_d1).map(t).sum::<C64>()
                + (0..k0).map(t).sum::<C64>();
            let direct = eq1_rhs(&f, &f, one, n, z, &ctx.quad)?;
            let printed = k2 as f64 * (0..big_d2).map(t).sum::<C64>() + k1 as f64 * cross + (0..=k0).map(t).sum::<C64>();
            let mut inputs = inputs.clone();
            inputs["printed_form_residual"] = json!((printed - direct).norm());
            Ok(Case::compare(id.clone(), inputs, decomposed, direct, tol))
        })
    }))
}

fn pair_term_mixed(f: &Element, l: usize, k: usize, z: Point, ctx: &Ctx) -> monodromy::Result<C64> {
    use monodromy::continuation::DeltaElement;
    use monodromy::convolution::bar_star;
    let one = c(1.0);
    let df = DeltaElement::new(f.clone(), one, l as i32);
    let dg = DeltaElement::new(f.clone(), one, k as i32);
    bar_star(&df, &dg, one, one, z, &ctx.quad)
}

fn coefficient_case(id: &str, inputs: serde_json::Value, found: Option<RecurrenceRelation>, want: &[C64], tol: f64) -> Case {
    match found {
        Some(rel) if rel.order == want.len() => {
            let err = rel.coefficients.iter().zip(want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let mut inputs = inputs;
            inputs["order"] = json!(rel.order);
            inputs["fit_residual"] = json!(rel.residual);
            inputs["shifted_residual"] = json!(rel.shifted_residual);
            inputs["field"] = json!(rel.field_tag);
            Case::with_residual(id, inputs, rel.coefficients[0], want[0], err, tol)
        }
        Some(rel) => Case::failed(id, inputs, tol, format!("found order {} instead of {}", rel.order, want.len())),
        None => Case::failed(id, inputs, tol, "no recurrence found"),
    }
}

/// Recurrence detection on √, log, `(1−z)^{-1/3}` and the algebro-geometric family.
pub fn recurrence_detect_suite(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let one = c(1.0);
    let tol = ctx.config.tol("coefficients", 1e-8);
    let d_max = 3;
    let detect = |el: &dyn AnalyticElement| -> monodromy::Result<Option<RecurrenceRelation>> {
        let base = default_base(el, one);
        let table = build_branch_table(el, one, base, 0, 2 * d_max as i32)?;
        let r = 0.2 * base.dist(one);
        let points: Vec<C64> = (0..5).map(|j| base.value() + C64::from_polar(r, 1.3 * j as f64)).collect();
        Ok(recurrence_detect(&table, d_max, &points))
    };
    let mut cases = Vec::new();

    let sqrt = AlgebraicElement::shifted_sqrt();
    cases.push(guarded("sqrt".into(), json!({ "element": "1 + sqrt(1-z)" }), tol, || {
        Ok(coefficient_case("sqrt", json!({ "element": "1 + sqrt(1-z)" }), detect(&sqrt)?, &[one, c(0.0)], tol))
    }));

    let log = LogBranch { alpha: one, scale: one };
    cases.push(guarded("log".into(), json!({ "element": "log(1-z)" }), tol, || {
        Ok(coefficient_case("log", json!({ "element": "log(1-z)" }), detect(&log)?, &[c(-1.0), c(2.0)], tol))
    }));

    let third = PowerBranch::new(one, c(1.0 / 3.0));
    cases.push(guarded("cube-root".into(), json!({ "element": "(1-z)^(-1/3)" }), tol, || {
        // Oracle constant from one numerical loop, confirmed at the next loop.
        let p = Point::at(c(0.5));
        let v = sigma_values(&third, one, p, 2)?;
        let measured = v[1] / v[0];
        let confirm = (v[2] / v[1] - measured).norm();
        let exact = power_sigma_exact(&third, 1).prefactor;
        let inputs = json!({ "element": "(1-z)^(-1/3)", "oracle": cjson(measured), "oracle_shift_check": confirm, "closed_form": cjson(exact) });
        Ok(coefficient_case("cube-root", inputs, detect(&third)?, &[measured], tol))
    }));

    for n in 0..=2u32 {
        let a = c(1.0 / 3.0);
        let el = AlgebroGeometricElement::new(one, a, n, vec![one, C64::new(0.5, -0.25)])?;
        let want = vandermonde_recurrence(a, n as usize).coefficients;
        let inputs = json!({ "element": "algebro-geometric", "a": cjson(a), "n": n });
        let id = format!("vandermonde-n{n}");
        cases.push(guarded(id.clone(), inputs.clone(), tol, || Ok(coefficient_case(&id, inputs.clone(), detect(&el)?, &want, tol))));
    }
    Ok(cases)
}
