use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use monodromy::continuation::{
    sigma_tracker, AnalyticElement, DeltaElement, Element, Monomial, Path,
};
use monodromy::convolution::{annulus_point, hadamard_element_default};
use monodromy::germs::HyperSeries;
use monodromy::numerics::{segment_integral_points, Point, QuadratureConfig};
use monodromy::zoo::*;
use monodromy::C64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn one() -> C64 {
    c(1.0, 0.0)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn numeric_delta(el: Element, z: Point) -> C64 {
    DeltaElement::new(el, one(), 0).eval(z).unwrap()
}

#[test]
fn power_delta_prefactor_matches_one_loop() {
    let p = PowerBranch::new(one(), c(1.0 / 3.0, 0.0));
    let d = power_sigma_exact(&p, 1).delta_prefactor;
    assert!((d.norm() - 3f64.sqrt()).abs() < 1e-14);
    let z = Point::at(c(0.4, 0.2));
    let measured = numeric_delta(Arc::new(p), z) / p.eval(z).unwrap();
    let exact0 = power_sigma_exact(&p, 0).delta_prefactor;
    assert!((measured - exact0).norm() < 1e-13);
}

#[test]
fn dilog_at_one_against_long_series() {
    // oracle: 10^6 terms summed smallest first plus the Euler-Maclaurin tail
    let n = 1_000_000u64;
    let mut s = 0.0f64;
    for k in (1..=n).rev() {
        let kf = k as f64;
        s += 1.0 / (kf * kf);
    }
    let nf = n as f64;
    let tail = 1.0 / nf - 1.0 / (2.0 * nf * nf) + 1.0 / (6.0 * nf.powi(3)) - 1.0 / (30.0 * nf.powi(5));
    let oracle = s + tail;
    assert!((oracle - PI * PI / 6.0).abs() < 1e-14);
    let v = polylog_eval(&PolylogElement::new(2, false).unwrap(), Point::at(one()), &cfg()).unwrap();
    assert!((v - oracle).norm() < 1e-12, "{v} vs {oracle}");
}

#[test]
fn polylog_examples() {
    let li1 = PolylogElement::new(1, false).unwrap();
    assert!((polylog_eval(&li1, Point::at(c(0.5, 0.0)), &cfg()).unwrap() - 2f64.ln()).norm() < 1e-15);
    for k in 1..=4 {
        let p = PolylogElement::new(k, false).unwrap();
        assert_eq!(polylog_eval(&p, Point::at(c(0.0, 0.0)), &cfg()).unwrap(), c(0.0, 0.0));
    }
    assert!(PolylogElement::new(0, false).is_err());
    for z in [c(0.3, 0.1), c(-2.0, 1.0)] {
        assert!((polylog_delta_exact(1, z).unwrap() - c(0.0, -TAU)).norm() < 1e-15);
    }
    assert!(polylog_delta_exact(2, one()).unwrap().norm() < 1e-15);
    let e = c(std::f64::consts::E, 0.0);
    assert!((polylog_delta_exact(3, e).unwrap() - c(0.0, -PI)).norm() < 1e-14);
    // the normalized variant carries −1/2πi
    let li2 = PolylogElement::new(2, true).unwrap();
    let z = Point::at(c(0.2, 0.3));
    let plain = polylog_eval(&PolylogElement::new(2, false).unwrap(), z, &cfg()).unwrap();
    assert!((polylog_eval(&li2, z, &cfg()).unwrap() + plain / c(0.0, TAU)).norm() < 1e-15);
}

#[test]
fn algebro_geometric_examples() {
    let el = AlgebroGeometricElement::new(one(), c(0.5, 0.0), 1, vec![one(), c(0.5, 0.0)]).unwrap();
    let z = Point::at(c(0.4, -0.3));
    assert!((algebro_geometric_sigma(&el, 0, z) - el.eval(z).unwrap()).norm() < 1e-14);

    let plain = AlgebroGeometricElement::new(one(), c(1.0 / 3.0, 0.0), 0, vec![one()]).unwrap();
    let p = PowerBranch::new(one(), c(1.0 / 3.0, 0.0));
    let ratio = algebro_geometric_sigma(&plain, 1, z) / algebro_geometric_sigma(&plain, 0, z);
    assert!((ratio - power_sigma_exact(&p, 1).prefactor).norm() < 1e-14);

    let numeric = sigma_tracker(&el, one(), z, 1).unwrap().value();
    assert!((numeric - algebro_geometric_sigma(&el, 1, z)).norm() < 1e-7);

    assert!(AlgebroGeometricElement::new(c(0.0, 0.0), one(), 0, vec![one()]).is_err());
    assert!(AlgebroGeometricElement::new(one(), one(), 0, vec![one(); 6]).is_err());
}

/// Solves `v_3 = a_0 v_0 + a_1 v_1 + a_2 v_2` for `v_k = (k², 2k, 1)`, the
/// coefficients of `(L + k)²`, by fraction-free Gaussian elimination.
fn exact_order_three_relation() -> [i64; 3] {
    let v = |k: i64| [k * k, 2 * k, 1];
    // columns v_0, v_1, v_2 and right-hand side v_3
    let mut m: Vec<[i64; 4]> = (0..3).map(|r| [v(0)[r], v(1)[r], v(2)[r], v(3)[r]]).collect();
    for col in 0..3 {
        let piv = (col..3).find(|&r| m[r][col] != 0).unwrap();
        m.swap(col, piv);
        for r in 0..3 {
            if r != col && m[r][col] != 0 {
                let (a, b) = (m[col][col], m[r][col]);
                for j in 0..4 {
                    m[r][j] = m[r][j] * a - m[col][j] * b;
                }
            }
        }
    }
    let mut out = [0; 3];
    for r in 0..3 {
        assert_eq!(m[r][3] % m[r][r], 0);
        out[r] = m[r][3] / m[r][r];
    }
    out
}

#[test]
fn vandermonde_relations() {
    let a = c(0.3, 0.0);
    let r0 = vandermonde_recurrence(a, 0);
    assert_eq!(r0.order, 1);
    assert!((r0.coefficients[0] - C64::from_polar(1.0, orientation_sign() * TAU * 0.3)).norm() < 1e-14);

    let r1 = vandermonde_recurrence(c(0.0, 0.0), 1);
    assert!((r1.coefficients[0] + 1.0).norm() < 1e-14 && (r1.coefficients[1] - 2.0).norm() < 1e-14);

    let oracle = exact_order_three_relation();
    assert_eq!(oracle, [1, -3, 3]);
    let r2 = vandermonde_recurrence(c(0.0, 0.0), 2);
    for (got, want) in r2.coefficients.iter().zip(oracle) {
        assert!((got - want as f64).norm() < 1e-12);
    }
}

#[test]
fn elliptic_examples() {
    assert!((elliptic_k_norm(c(0.0, 0.0), &cfg()).unwrap() - 1.0).norm() < 1e-14);
    let h = HyperSeries::power_branch(one(), c(0.5, 0.0)).unwrap();
    let sq = h.hadamard(&h).coefficients(8);
    let mut ratio = 1.0f64;
    for (n, x) in sq.iter().enumerate() {
        assert!((x - ratio * ratio).norm() < 1e-16);
        ratio *= (2 * n + 1) as f64 / (2 * n + 2) as f64;
    }
    // oracle: 1/agm(1, √(1 − k²)) by the classical iteration
    let (mut a, mut b) = (1.0f64, (1.0f64 - 0.25).sqrt());
    while (a - b).abs() > 1e-16 {
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    let v = elliptic_k_norm(c(0.25, 0.0), &cfg()).unwrap();
    assert!((v - 1.0 / a).norm() < 1e-10);
    assert!(elliptic_k_norm(c(1.5, 0.0), &cfg()).is_err());
}

#[test]
fn elliptic_integral_matches_truncated_square() {
    let h = HyperSeries::power_branch(one(), c(0.5, 0.0)).unwrap();
    let sq = h.hadamard(&h).coefficients(4000);
    for ksq in [0.1, 0.3, 0.5] {
        let series: C64 = sq.iter().rev().fold(c(0.0, 0.0), |acc, x| acc * ksq + x);
        let v = elliptic_k_norm(c(ksq, 0.0), &cfg()).unwrap();
        assert!((v - series).norm() < 1e-8, "ksq = {ksq}");
    }
}

#[test]
fn modular_closed_form_against_continuation() {
    let f = PowerBranch::new(one(), c(0.5, 0.0));
    let h = hadamard_element_default(&f, &f).unwrap();
    for z in [Point::at(c(0.5, 0.0)), Point::at(c(0.5, 0.25)), Point::at(c(0.5, -0.25))] {
        let closed = modular_delta_closed_form(z, &cfg()).unwrap();
        let numeric = numeric_delta(h.clone(), z);
        assert!((closed - numeric).norm() < 1e-5, "{closed} vs {numeric}");
    }
}

#[test]
fn gauss_examples() {
    let (a, b, cc) = (c(0.3, 0.1), c(-0.2, 0.0), c(1.4, 0.0));
    assert_eq!(hyp2f1(a, b, cc, c(0.0, 0.0)).unwrap(), one());
    let v = hyp2f1(one(), one(), c(2.0, 0.0), c(0.5, 0.0)).unwrap();
    assert!((v - 2.0 * 2f64.ln()).norm() < 1e-14);
    let g = Hypergeometric2F1::new(c(0.5, 0.0), c(0.5, 0.0), one()).unwrap();
    let h = HyperSeries::power_branch(one(), c(0.5, 0.0)).unwrap();
    for (x, y) in g.coefficients(30).iter().zip(h.hadamard(&h).coefficients(30)) {
        assert!((x - y).norm() < 1e-15);
    }
    assert!(Hypergeometric2F1::new(a, b, c(-1.0, 0.0)).is_err());
}

#[test]
fn connection_formula_examples() {
    let (a, b) = (c(1.0 / 3.0, 0.0), c(0.2, 0.0));
    let z = c(0.5, 0.25);
    let exact = hyp2f1_delta(a, b, one(), z).unwrap();
    assert!(exact.re.is_finite() && exact.im.is_finite());
    assert!((exact - hyp2f1_delta(b, a, one(), z).unwrap()).norm() < 1e-14);
    let el: Element = Arc::new(Hypergeometric2F1::new(a, b, one()).unwrap().element());
    assert!((exact - numeric_delta(el, Point::at(z))).norm() < 1e-6);
    assert!(hyp2f1_delta(c(0.5, 0.0), c(0.5, 0.0), one(), z).is_err());
}

#[test]
fn fractional_examples() {
    let zero = c(0.0, 0.0);
    let f: Element = Arc::new(Monomial { coefficient: one(), power: 0 });
    let z = c(0.6, 0.3);
    assert!((fractional_integral(f.as_ref(), zero, one(), z, &cfg()).unwrap() - z).norm() < 1e-14);
    let mut fact = 1.0;
    for n in 1..=4 {
        fact *= n as f64;
        let v = fractional_integral(f.as_ref(), zero, c(n as f64, 0.0), z, &cfg()).unwrap();
        assert!((v - z.powi(n) / fact).norm() < 1e-14);
    }
    let half = FractionalIntegral { f: f.clone(), base: zero, order: c(0.5, 0.0), config: cfg() };
    let z = c(0.7, 0.0);
    let twice = fractional_integral(&half, zero, c(0.5, 0.0), z, &cfg()).unwrap();
    assert!((twice - 0.7).norm() < 1e-8);
    assert!(fractional_integral(f.as_ref(), zero, c(-0.5, 0.0), z, &cfg()).is_err());
}

#[test]
fn algebraic_branches_are_periodic() {
    let sqrt = AlgebraicElement::shifted_sqrt();
    let base = Point::at(c(0.5, 0.0));
    let w0 = sqrt.eval(base).unwrap();
    let w1 = sigma_tracker(&sqrt, one(), base, 1).unwrap().value();
    let w2 = sigma_tracker(&sqrt, one(), base, 2).unwrap().value();
    assert!((w1 - w0).norm() > 0.5 && (w2 - w0).norm() < 1e-12);

}

fn ramification() -> f64 {
    2.0 / (3.0 * 3f64.sqrt())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cubic_stays_on_its_curve_with_period_two(sign in prop::bool::ANY, r in 0.1f64..0.35, phi in 0.0f64..TAU) {
        let cubic = AlgebraicElement::cubic();
        let alpha = c(if sign { ramification() } else { -ramification() }, 0.0);
        let base = Point::at(alpha + C64::from_polar(r, phi));
        let mut t = cubic.start(base).unwrap();
        let w0 = t.value();
        prop_assert!(cubic.defect(base.value(), w0) < 1e-10);
        let mut after = Vec::new();
        for _ in 0..2 {
            for v in &Path::loop_around(alpha, base, 1).vertices()[1..] {
                t.advance(*v).unwrap();
                prop_assert!(cubic.defect(v.value(), t.value()) < 1e-10);
            }
            after.push(t.value());
        }
        prop_assert!((after[0] - w0).norm() > 1e-3);
        prop_assert!((after[1] - w0).norm() < 1e-10);
    }

    #[test]
    fn power_monodromy_exact_vs_numeric(a in -1.5f64..0.95, ur in 0.0f64..1.0, ut in 0.0f64..1.0) {
        let p = PowerBranch::new(one(), c(a, 0.0));
        let z = annulus_point(one(), ur, ut);
        let exact = power_sigma_exact(&p, 0).delta_prefactor * p.eval(z).unwrap();
        let numeric = numeric_delta(Arc::new(p), z);
        prop_assert!((exact - numeric).norm() <= 1e-6 * (1.0 + exact.norm()));
    }

    #[test]
    fn algebro_geometric_monodromy_exact_vs_numeric(n in 0u32..=2, a in -1.0f64..0.95, k in 0i32..3, ur in 0.0f64..1.0, ut in 0.0f64..1.0) {
        let el = AlgebroGeometricElement::new(one(), c(a, 0.0), n, vec![c(0.5, 0.1), one(), c(0.0, -0.3)]).unwrap();
        let z = annulus_point(one(), ur, ut);
        let exact = algebro_geometric_sigma(&el, k + 1, z) - algebro_geometric_sigma(&el, k, z);
        let numeric = DeltaElement::new(Arc::new(el), one(), k).eval(z).unwrap();
        prop_assert!((exact - numeric).norm() <= 1e-6 * (1.0 + exact.norm()));
    }

    #[test]
    fn gauss_monodromy_exact_vs_numeric(a in 0.05f64..0.95, b in 0.05f64..0.95, ur in 0.0f64..1.0, ut in 0.0f64..1.0) {
        let s = 1.0 - a - b;
        prop_assume!((s - s.round()).abs() > 0.05);
        let z = annulus_point(one(), ur, ut);
        let exact = hyp2f1_delta(c(a, 0.0), c(b, 0.0), one(), z.value()).unwrap();
        let el: Element = Arc::new(Hypergeometric2F1::new(c(a, 0.0), c(b, 0.0), one()).unwrap().element());
        let numeric = numeric_delta(el, z);
        prop_assert!((exact - numeric).norm() <= 1e-6 * (1.0 + exact.norm()), "{exact} vs {numeric}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn polylog_monodromy_exact_vs_numeric(ur in 0.0f64..1.0, ut in 0.0f64..1.0) {
        let z = annulus_point(one(), ur, ut);
        for k in 1..=4 {
            let el: Element = Arc::new(PolylogElement::new(k, false).unwrap());
            let exact = polylog_delta_exact(k, z.value()).unwrap();
            let numeric = numeric_delta(el, z);
            prop_assert!((exact - numeric).norm() <= 1e-6 * (1.0 + exact.norm()), "k = {k}");
        }
    }

    #[test]
    fn polylog_integral_recursion(r in 0.1f64..1.4, t in 0.0f64..TAU) {
        let z = C64::from_polar(r, t);
        prop_assume!((z - 1.0).norm() > 0.05 && !(z.im.abs() < 1e-3 && z.re > 1.0));
        for k in 1..=3u32 {
            let lower = PolylogElement::new(k, false).unwrap();
            let upper = PolylogElement::new(k + 1, false).unwrap();
            let integral = segment_integral_points(
                |p| {
                    if p.u.norm() == 0.0 {
                        return one();
                    }
                    // fdiv avoids the underflow of |u|² for tiny u
                    polylog_eval(&lower, Point::at(p.u), &cfg()).unwrap().fdiv(p.u)
                },
                c(0.0, 0.0),
                z,
                &cfg(),
            )
            .unwrap();
            let direct = polylog_eval(&upper, Point::at(z), &cfg()).unwrap();
            prop_assert!((integral - direct).norm() <= 1e-8, "k = {k}: {integral} vs {direct}");
        }
    }

    #[test]
    fn integer_fractional_orders_equal_iterated_integration(deg in 0i32..=5, n in 2u32..=3, x in 0.2f64..0.9, y in -0.5f64..0.5) {
        let zero = c(0.0, 0.0);
        let z = c(x, y);
        let f: Element = Arc::new(Monomial { coefficient: one(), power: deg });
        let direct = fractional_integral(f.as_ref(), zero, c(n as f64, 0.0), z, &cfg()).unwrap();
        let mut g = f;
        for _ in 0..n - 1 {
            g = Arc::new(FractionalIntegral { f: g, base: zero, order: one(), config: cfg() });
        }
        let iterated = fractional_integral(g.as_ref(), zero, one(), z, &cfg()).unwrap();
        let fact: f64 = (deg + 1..=deg + n as i32).map(|j| j as f64).product();
        let exact = z.powi(deg + n as i32) / fact;
        prop_assert!((direct - iterated).norm() <= 1e-12 * (1.0 + direct.norm()));
        prop_assert!((direct - exact).norm() <= 1e-13);
    }
}
