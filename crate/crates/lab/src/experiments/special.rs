use std::sync::Arc;

use monodromy::continuation::{AnalyticElement, DeltaElement, Element, Monomial};
use monodromy::germs::HyperSeries;
use monodromy::zoo::{
    elliptic_k_agm, elliptic_k_norm, euler_2f1, fractional_integral, hyp2f1, hyp2f1_delta, modular_delta_closed_form,
    polylog_delta_exact, FractionalIntegral, Hypergeometric2F1, PolylogElement, ZooDescriptor,
};
use monodromy::C64;
use serde_json::json;

use super::{c, cjson, guarded, par_cases, Ctx};
use crate::error::LabResult;
use crate::report::Case;

/// Numerical `Δ_1 Li_k` against `−2πi (log z)^{k−1}/(k−1)!`, `k = 1..4`.
pub fn polylog_monodromy(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let one = c(1.0);
    let tol = ctx.config.tol("residual", 1e-8);
    let points = ctx.annulus_points(one, ctx.config.samples_or(5));
    let items: Vec<(u32, usize)> = (1..=4).flat_map(|k| (0..points.len()).map(move |i| (k, i))).collect();
    Ok(par_cases(&items, |&(k, i)| {
        let z = points[i];
        let id = format!("k{k}-z{i}");
        let inputs = json!({ "k": k, "z": cjson(z.value()) });
        guarded(id.clone(), inputs.clone(), tol, || {
            let li: Element = Arc::new(PolylogElement::new(k, false)?);
            let numeric = DeltaElement::new(li, one, 0).eval(z)?;
            Ok(Case::compare(id, inputs, numeric, polylog_delta_exact(k, z.value())?, tol))
        })
    }))
}

/// Hadamard square of `(1−z)^{-1/2}` summed to `M = 4000` against the
/// elliptic integral, and the integral against the AGM.
pub fn elliptic_identity(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let series_tol = ctx.config.tol("series", 1e-8);
    let agm_tol = ctx.config.tol("agm", 1e-10);
    let m = 4000;
    let h = HyperSeries::power_branch(c(1.0), c(0.5))?;
    let key = format!("hadamard:{}#0:{}#0", ZooDescriptor::power(1.0, 0.5).key(), ZooDescriptor::power(1.0, 0.5).key());
    let coeffs = ctx.hadamard_coefficients(&key, &h, &h, m)?;
    let mut cases = Vec::new();
    for ksq in [0.1, 0.3, 0.5] {
        let q = c(ksq);
        let inputs = json!({ "ksq": ksq, "M": m });
        cases.push(guarded(format!("series-{ksq}"), inputs.clone(), series_tol, || {
            let mut acc = C64::new(0.0, 0.0);
            for a in coeffs.iter().rev() {
                acc = acc * q + a;
            }
            Ok(Case::compare(format!("series-{ksq}"), inputs.clone(), acc, elliptic_k_norm(q, &ctx.quad)?, series_tol))
        }));
        cases.push(guarded(format!("agm-{ksq}"), inputs.clone(), agm_tol, || {
            Ok(Case::compare(format!("agm-{ksq}"), inputs.clone(), elliptic_k_norm(q, &ctx.quad)?, elliptic_k_agm(q), agm_tol))
        }));
    }
    Ok(cases)
}

/// Closed-form `Δ_1` of the Hadamard square against its numerical monodromy.
pub fn modular_monodromy(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let one = c(1.0);
    let tol = ctx.config.tol("residual", 1e-5);
    let d = ZooDescriptor::power(1.0, 0.5);
    let h = ctx.hadamard(&d, &d)?;
    let points = ctx.annulus_points(one, ctx.config.samples_or(5));
    Ok(par_cases(&points.iter().enumerate().collect::<Vec<_>>(), |&(i, z)| {
        let id = format!("z{i}");
        let inputs = json!({ "z": cjson(z.value()) });
        guarded(id.clone(), inputs.clone(), tol, || {
            let numeric = DeltaElement::new(h.clone(), one, 0).eval(*z)?;
            Ok(Case::compare(id, inputs, modular_delta_closed_form(*z, &ctx.quad)?, numeric, tol))
        })
    }))
}

/// First 64 coefficients of `(1−z)^{-a} ⊙ (1−z)^{-b}` against `2F1(a, b; 1)`.
pub fn hypergeometric_identity(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let tol = ctx.config.tol("relative", 1e-13);
    let m = 64;
    let mut cases = Vec::new();
    for (a, b) in [(0.5, 0.5), (1.0 / 3.0, 0.2)] {
        let (fa, fb) = (HyperSeries::power_branch(c(1.0), c(a))?, HyperSeries::power_branch(c(1.0), c(b))?);
        let key = format!("hadamard:{}#0:{}#0", ZooDescriptor::power(1.0, a).key(), ZooDescriptor::power(1.0, b).key());
        let prod = ctx.hadamard_coefficients(&key, &fa, &fb, ctx.config.coeffs.max(m))?;
        let gauss = Hypergeometric2F1::new(c(a), c(b), c(1.0))?.coefficients(m);
        let (worst, n) = (0..m)
            .map(|n| ((prod[n] - gauss[n]).norm() / gauss[n].norm(), n))
            .fold((0.0, 0), |acc, x| if x.0 > acc.0 { x } else { acc });
        let inputs = json!({ "a": a, "b": b, "coefficients": m, "worst_index": n });
        cases.push(Case::with_residual(format!("a{a:.3}-b{b:.3}"), inputs, prod[n], gauss[n], worst, tol));
    }
    Ok(cases)
}

/// Euler integral against the series at seeded points `|z| ≤ 0.7`.
pub fn euler_integral(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let tol = ctx.config.tol("residual", 1e-9);
    let points = ctx.disk_points(0.7, ctx.config.samples_or(10));
    let params = [(1.0 / 3.0, 0.2, 1.0), (0.5, 0.5, 1.0), (0.7, 1.5, 2.25)];
    let items: Vec<(usize, usize)> = (0..params.len()).flat_map(|p| (0..points.len()).map(move |i| (p, i))).collect();
    Ok(par_cases(&items, |&(p, i)| {
        let (a, b, cc) = params[p];
        let z = points[i];
        let id = format!("p{p}-z{i}");
        let inputs = json!({ "a": a, "b": b, "c": cc, "z": cjson(z) });
        guarded(id.clone(), inputs.clone(), tol, || {
            let e = euler_2f1(c(a), c(b), c(cc), z, &ctx.quad)?;
            Ok(Case::compare(id, inputs, e, hyp2f1(c(a), c(b), c(cc), z)?, tol))
        })
    }))
}

/// Corrected connection formula against numerical monodromy of the series germ.
pub fn hyp2f1_monodromy(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let one = c(1.0);
    let tol = ctx.config.tol("residual", 1e-6);
    let (a, b, cc) = (c(1.0 / 3.0), c(0.2), one);
    let el: Element = Arc::new(Hypergeometric2F1::new(a, b, cc)?.element());
    let points = ctx.annulus_points(one, ctx.config.samples_or(5));
    Ok(par_cases(&points.iter().enumerate().collect::<Vec<_>>(), |&(i, z)| {
        let id = format!("z{i}");
        let inputs = json!({ "a": cjson(a), "b": cjson(b), "c": cjson(cc), "z": cjson(z.value()) });
        guarded(id.clone(), inputs.clone(), tol, || {
            let numeric = DeltaElement::new(el.clone(), one, 0).eval(*z)?;
            Ok(Case::compare(id, inputs, hyp2f1_delta(a, b, cc, z.value())?, numeric, tol))
        })
    }))
}

/// `I_{1/2} ∘ I_{1/2} = I_1` and `I_n` = `n`-fold `I_1` on monomials of degree ≤ 5.
pub fn fractional_semigroup(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let tol = ctx.config.tol("residual", 1e-8);
    let int_tol = ctx.config.tol("integer-order", 1e-12);
    let zero = c(0.0);
    let mut points = vec![c(0.7)];
    points.extend(ctx.disk_points(1.0, ctx.config.samples_or(5) - 1));
    let items: Vec<(u32, usize)> = (0..=5).flat_map(|deg| (0..points.len()).map(move |i| (deg, i))).collect();
    let mut cases = par_cases(&items, |&(deg, i)| {
        let z = points[i];
        let id = format!("half-half-deg{deg}-z{i}");
        let inputs = json!({ "degree": deg, "z": cjson(z) });
        guarded(id.clone(), inputs.clone(), tol, || {
            let f: Element = Arc::new(Monomial { coefficient: c(1.0), power: deg as i32 });
            let half = FractionalIntegral { f: f.clone(), base: zero, order: c(0.5), config: ctx.quad };
            let twice = fractional_integral(&half, zero, c(0.5), z, &ctx.quad)?;
            let once = fractional_integral(f.as_ref(), zero, c(1.0), z, &ctx.quad)?;
            Ok(Case::compare(id, inputs, twice, once, tol))
        })
    });
    let int_items: Vec<(u32, u32)> = (2..=3).flat_map(|n| (0..=5).map(move |deg| (n, deg))).collect();
    cases.extend(par_cases(&int_items, |&(n, deg)| {
        let z = points[0];
        let id = format!("order{n}-deg{deg}");
        let inputs = json!({ "order": n, "degree": deg, "z": cjson(z) });
        guarded(id.clone(), inputs.clone(), int_tol, || {
            let f: Element = Arc::new(Monomial { coefficient: c(1.0), power: deg as i32 });
            let direct = fractional_integral(f.as_ref(), zero, c(n as f64), z, &ctx.quad)?;
            let mut g = f;
            for _ in 0..n - 1 {
                g = Arc::new(FractionalIntegral { f: g, base: zero, order: c(1.0), config: ctx.quad });
            }
            let iterated = fractional_integral(g.as_ref(), zero, c(1.0), z, &ctx.quad)?;
            Ok(Case::compare(id, inputs, direct, iterated, int_tol * (1.0 + direct.norm())))
        })
    }));
    Ok(cases)
}
