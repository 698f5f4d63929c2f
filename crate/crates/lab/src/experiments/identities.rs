use std::sync::Arc;

use monodromy::continuation::{Element, Monomial, Product};
use monodromy::convolution::{
    barstar_loop_difference, barstar_monodromy_residual, eq1_rhs, fundamental_formula_residual,
    iterated_formula_residual, monodromy_difference, morphism_residual, multi_factor_rhs, pair_term, PairDecomposition,
};
use monodromy::continuation::DeltaElement;
use monodromy::numerics::Point;
use monodromy::zoo::{polylog_delta_exact, AlgebroGeometricElement, LogBranch, ZooDescriptor};
use monodromy::C64;
use serde_json::json;

use super::{c, cjson, guarded, par_cases, Ctx};
use crate::error::LabResult;
use crate::report::Case;

fn elliptic_factor() -> ZooDescriptor {
    ZooDescriptor::power(1.0, 0.5)
}

/// Iterated monodromy formula for the elliptic pair, `N ∈ {1, 2, 3}`.
pub fn eq1_residual(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let d = elliptic_factor();
    let f = d.build()?;
    let h = ctx.hadamard(&d, &d)?;
    let rel = ctx.config.tol("relative", 1e-5);
    let one = c(1.0);
    let points = ctx.annulus_points(one, ctx.config.samples_or(10));
    let items: Vec<(usize, usize, Point)> =
        (1..=3).flat_map(|n| points.iter().enumerate().map(move |(i, p)| (n, i, *p))).collect();
    Ok(par_cases(&items, |&(n, i, z)| {
        let inputs = json!({ "N": n, "z": cjson(z.value()), "gamma": [1.0, 0.0] });
        let id = format!("N{n}-z{i}");
        guarded(id.clone(), inputs.clone(), rel, || {
            let r = iterated_formula_residual(&f, &f, h.as_ref(), one, n, z, &ctx.quad)?;
            let tol = rel * (1.0 + r.lhs.norm());
            Ok(Case::compare(id, inputs, r.lhs, r.rhs, tol).with_err(r.err_estimates))
        })
    }))
}

/// Two pairs `αβ = 6` from power branches at `{2, 3}` and `{3, 2}`.
pub fn multiplicity_superposition(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let fd = ZooDescriptor::Sum { terms: vec![ZooDescriptor::power(2.0, 0.5), ZooDescriptor::power(3.0, 1.0 / 3.0)] };
    let gd = ZooDescriptor::Sum { terms: vec![ZooDescriptor::power(3.0, 0.5), ZooDescriptor::power(2.0, 0.25)] };
    let (f, g) = (fd.build()?, gd.build()?);
    let h = ctx.hadamard(&fd, &gd)?;
    let gamma = c(6.0);
    let tol = ctx.config.tol("residual", 1e-4);
    let points = ctx.annulus_points(gamma, ctx.config.samples_or(3));
    let mut cases = Vec::new();
    for (i, z) in points.iter().enumerate() {
        let inputs = json!({ "z": cjson(z.value()), "gamma": [6.0, 0.0], "N": 1 });
        cases.push(guarded(format!("lhs-vs-rhs-z{i}"), inputs.clone(), tol, || {
            let r = iterated_formula_residual(&f, &g, h.as_ref(), gamma, 1, *z, &ctx.quad)?;
            Ok(Case::compare(format!("lhs-vs-rhs-z{i}"), inputs.clone(), r.lhs, r.rhs, tol))
        }));
        cases.push(guarded(format!("superposition-z{i}"), inputs.clone(), 0.0, || {
            let pairs = PairDecomposition::new(&f.singularities(), &g.singularities(), gamma);
            let whole = eq1_rhs(&f, &g, gamma, 1, *z, &ctx.quad)?;
            let mut isolated = C64::new(0.0, 0.0);
            for &(a, b) in &pairs.pairs {
                isolated += pair_term(&f, &g, a, b, 0, *z, &ctx.quad)?;
            }
            let mut inputs = inputs.clone();
            inputs["multiplicity"] = json!(pairs.multiplicity());
            Ok(Case::compare(format!("superposition-z{i}"), inputs, whole, isolated, 0.0))
        }));
    }
    Ok(cases)
}

/// Morphism property at `k ∈ {0, 1, 2}` for the elliptic pair.
pub fn morphism(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let d = elliptic_factor();
    let f = d.build()?;
    let h = ctx.hadamard(&d, &d)?;
    let tol = ctx.config.tol("residual", 1e-4);
    let one = c(1.0);
    let points = ctx.annulus_points(one, ctx.config.samples_or(5));
    let items: Vec<(usize, usize, Point)> =
        (0..=2).flat_map(|k| points.iter().enumerate().map(move |(i, p)| (k, i, *p))).collect();
    Ok(par_cases(&items, |&(k, i, z)| {
        let id = format!("k{k}-z{i}");
        let inputs = json!({ "k": k, "z": cjson(z.value()) });
        guarded(id.clone(), inputs.clone(), tol, || {
            let r = morphism_residual(&f, &f, h.as_ref(), one, k, z, &ctx.quad)?;
            Ok(Case::compare(id, inputs, r.lhs, r.rhs, tol).with_err(r.err_estimates))
        })
    }))
}

/// Three-factor nested convolution: stability under node doubling, and the
/// two-factor reduction.
pub fn multi_factor_n3(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let f = elliptic_factor().build()?;
    let one = c(1.0);
    let digits = ctx.config.tol("relative", 1e-3);
    let reduction = ctx.config.tol("reduction", 1e-10);
    let points = ctx.annulus_points(one, ctx.config.samples_or(2));
    let three = vec![f.clone(), f.clone(), f.clone()];
    let mut cases = Vec::new();
    for (i, z) in points.iter().enumerate() {
        let inputs = json!({ "z": cjson(z.value()), "n": 3, "N": 1 });
        cases.push(guarded(format!("n3-doubling-z{i}"), inputs.clone(), digits, || {
            let coarse = multi_factor_rhs(&three, one, 1, *z, &ctx.quad)?;
            let fine = multi_factor_rhs(&three, one, 1, *z, &ctx.quad.refined())?;
            let rel = (coarse - fine).norm() / fine.norm().max(f64::MIN_POSITIVE);
            Ok(Case::with_residual(format!("n3-doubling-z{i}"), inputs.clone(), coarse, fine, rel, digits))
        }));
        let inputs = json!({ "z": cjson(z.value()), "n": 2, "N": 1 });
        cases.push(guarded(format!("n2-reduction-z{i}"), inputs.clone(), reduction, || {
            let pair = vec![f.clone(), f.clone()];
            let a = multi_factor_rhs(&pair, one, 1, *z, &ctx.quad)?;
            let b = eq1_rhs(&f, &f, one, 1, *z, &ctx.quad)?;
            Ok(Case::compare(format!("n2-reduction-z{i}"), inputs.clone(), a, b, reduction))
        }));
    }
    Ok(cases)
}

/// Integro-monodromy formula on its three example integrands.
pub fn fundamental_3_1(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let tol = ctx.config.tol("residual", 1e-6);
    let one = c(1.0);
    let mut cases = Vec::new();

    let holo: Element = Arc::new(Monomial { coefficient: C64::new(0.3, -0.2), power: 2 });
    let z = Point::new(one, C64::new(-0.4, 0.3));
    let inputs = json!({ "f": "0.3-0.2i·u²", "alpha": [1.0, 0.0], "z": cjson(z.value()) });
    cases.push(guarded("holomorphic".into(), inputs.clone(), tol, || {
        let r = fundamental_formula_residual(&holo, one, z, &ctx.quad)?;
        Ok(Case::with_residual("holomorphic", inputs.clone(), r.lhs, r.rhs, r.lhs.norm().max(r.rhs.norm()), tol))
    }));

    let li1_over_u: Element = Arc::new(Product {
        // Li_1 = −log(1 − u), with the closed-form phase-tracked logarithm.
        left: Arc::new(LogBranch { alpha: one, scale: c(-1.0) }),
        right: Arc::new(Monomial { coefficient: one, power: -1 }),
    });
    for (i, z) in ctx.annulus_points(one, ctx.config.samples_or(3)).iter().enumerate() {
        let inputs = json!({ "f": "Li_1(u)/u", "alpha": [1.0, 0.0], "z": cjson(z.value()) });
        cases.push(guarded(format!("dilog-z{i}"), inputs.clone(), tol, || {
            let r = fundamental_formula_residual(&li1_over_u, one, *z, &ctx.quad)?;
            let exact = polylog_delta_exact(2, z.value())?;
            let worst = (r.lhs - r.rhs).norm().max((r.lhs - exact).norm());
            Ok(Case::with_residual(format!("dilog-z{i}"), inputs.clone(), r.lhs, r.rhs, worst, tol))
        }));
    }

    let inv_sqrt: Element = Arc::new(AlgebroGeometricElement::new(one, c(0.5), 0, vec![one])?);
    let z = Point::new(one, C64::new(-0.5, 0.5));
    let inputs = json!({ "f": "(u-1)^(-1/2)", "alpha": [1.0, 0.0], "z": cjson(z.value()) });
    cases.push(guarded("inverse-sqrt".into(), inputs.clone(), tol.min(1e-8), || {
        let r = fundamental_formula_residual(&inv_sqrt, one, z, &ctx.quad)?;
        Ok(Case::compare("inverse-sqrt", inputs.clone(), r.lhs, r.rhs, tol.min(1e-8)))
    }));
    Ok(cases)
}

/// Monodromy of a bar-star convolution, and the telescoping check against
/// the iterated formula at `N = 2`.
pub fn barstar_cor_3_4(ctx: &Ctx) -> LabResult<Vec<Case>> {
    let tol = ctx.config.tol("residual", 1e-4);
    let one = c(1.0);
    let z0 = Point::new(one, C64::new(-0.5, 0.25));
    let mut cases = Vec::new();

    let holo: Element = Arc::new(Monomial { coefficient: one, power: 3 });
    let sqrt_f = ZooDescriptor::power(1.0, 0.5).build()?;
    let inputs = json!({ "F": "z^3", "G": "(1-z)^(-1/2)", "z": cjson(z0.value()) });
    cases.push(guarded("zero-monodromy".into(), inputs.clone(), tol, || {
        let r = barstar_monodromy_residual(&holo, &sqrt_f, one, one, z0, &ctx.quad)?;
        Ok(Case::with_residual("zero-monodromy", inputs.clone(), r.lhs, r.rhs, r.lhs.norm().max(r.rhs.norm()), tol))
    }));

    let pairs = [(0.5, 0.5), (1.0 / 3.0, 0.2)];
    for (a, b) in pairs {
        let f = ZooDescriptor::power(1.0, a).build()?;
        let g = ZooDescriptor::power(1.0, b).build()?;
        let inputs = json!({ "a": a, "b": b, "z": cjson(z0.value()) });
        let id = format!("a{a:.3}-b{b:.3}");
        cases.push(guarded(id.clone(), inputs.clone(), tol, || {
            let r = barstar_monodromy_residual(&f, &g, one, one, z0, &ctx.quad)?;
            Ok(Case::compare(id.clone(), inputs.clone(), r.lhs, r.rhs, tol))
        }));
        for (i, z) in ctx.annulus_points(one, ctx.config.samples_or(2)).iter().enumerate() {
            let inputs = json!({ "a": a, "b": b, "z": cjson(z.value()) });
            let id = format!("{id}-z{i}");
            cases.push(guarded(id.clone(), inputs.clone(), tol, || {
                let r = barstar_monodromy_residual(&f, &g, one, one, *z, &ctx.quad)?;
                Ok(Case::compare(id.clone(), inputs.clone(), r.lhs, r.rhs, tol))
            }));
        }
    }

    // (Σ² − Id)H = T_0 + Σ_γ T_0 = 2T_0 + Δ_γ T_0 with T_0 = ΔF ⋆̄ ΔG.
    for (a, b) in pairs {
        let fd = ZooDescriptor::power(1.0, a);
        let gd = ZooDescriptor::power(1.0, b);
        let (f, g) = (fd.build()?, gd.build()?);
        let h = ctx.hadamard(&fd, &gd)?;
        let inputs = json!({ "a": a, "b": b, "z": cjson(z0.value()), "N": 2 });
        let id = format!("telescope-a{a:.3}-b{b:.3}");
        cases.push(guarded(id.clone(), inputs.clone(), tol, || {
            let (lhs, _) = monodromy_difference(h.as_ref(), one, z0, 2)?;
            let t0 = pair_term(&f, &g, one, one, 0, z0, &ctx.quad)?;
            let df = DeltaElement::new(f.clone(), one, 0);
            let dg = DeltaElement::new(g.clone(), one, 0);
            let jump = barstar_loop_difference(&df, &dg, one, one, z0, &ctx.quad)?;
            Ok(Case::compare(id.clone(), inputs.clone(), lhs, 2.0 * t0 + jump, tol))
        }));
    }
    Ok(cases)
}
