use monodromy::germs::{
    germ_eval, hadamard_coeffs, radius_estimate, read_coeff_csv, recenter, write_coeff_csv, CoeffSeries, Germ,
    HyperSeries,
};
use monodromy::C64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

/// Exact binomial coefficients of `(1 − z)^{-1/2}`: `(2n choose n)/4^n`.
fn inverse_sqrt_coeffs(m: usize) -> CoeffSeries {
    let mut a = Vec::with_capacity(m);
    let mut t = 1.0;
    for n in 0..m {
        a.push(c(t, 0.0));
        t *= (2 * n + 1) as f64 / (2 * n + 2) as f64;
    }
    CoeffSeries::new(a, Some(1.0))
}

#[test]
fn elliptic_pair_coefficients() {
    let f = inverse_sqrt_coeffs(10);
    let h = hadamard_coeffs(&f, &f);
    assert_eq!(h.coefficients[0], c(1.0, 0.0));
    assert!(close(h.coefficients[1], c(0.25, 0.0), 1e-16));
    assert!(close(h.coefficients[2], c(9.0 / 64.0, 0.0), 1e-16));
    let from_hyper = HyperSeries::power_branch(c(1.0, 0.0), c(0.5, 0.0)).unwrap().coefficients(10);
    for (a, b) in from_hyper.iter().zip(&f.coefficients) {
        assert!(close(*a, *b, 1e-15));
    }
}

#[test]
fn geometric_products() {
    let f = inverse_sqrt_coeffs(40);
    let ones = CoeffSeries::geometric(c(1.0, 0.0), 40);
    assert_eq!(hadamard_coeffs(&f, &ones).coefficients, f.coefficients);
    let (a, b) = (c(0.5, 0.3), c(-0.7, 0.2));
    let h = hadamard_coeffs(&CoeffSeries::geometric(a, 40), &CoeffSeries::geometric(b, 40));
    let ab = CoeffSeries::geometric(a * b, 40);
    for (x, y) in h.coefficients.iter().zip(&ab.coefficients) {
        assert!(close(*x, *y, 1e-14));
    }
}

#[test]
fn exp_germ_at_one_matches_longer_partial_sum() {
    // oracle: the factorial partial sum to 200 terms
    let mut oracle = 0.0;
    let mut t = 1.0;
    for n in 0..200 {
        oracle += t;
        t /= (n + 1) as f64;
    }
    let v = germ_eval(&CoeffSeries::exp(50).to_germ(), c(1.0, 0.0)).unwrap();
    assert!((v.value - oracle).norm() < 1e-12);
    assert!((oracle - std::f64::consts::E).abs() < 1e-15);
}

#[test]
fn evaluation_examples() {
    let g = CoeffSeries::geometric(c(1.0, 0.0), 256).to_germ();
    assert_eq!(germ_eval(&g, c(0.0, 0.0)).unwrap().value, c(1.0, 0.0));
    assert!(close(germ_eval(&g, c(0.5, 0.0)).unwrap().value, c(2.0, 0.0), 1e-14));
    assert!(germ_eval(&g, c(1.5, 0.0)).is_err());
}

#[test]
fn recenter_examples() {
    let g = CoeffSeries::geometric(c(1.0, 0.0), 256).to_germ();
    let h = recenter(&g, c(0.5, 0.0), 0.6).unwrap();
    for n in 0..20 {
        assert!(close(h.coefficients[n], c(2f64.powi(n as i32 + 1), 0.0), 1e-12), "n = {n}");
    }
    assert_eq!(recenter(&g, g.center, 0.4).unwrap(), g);
    assert!(recenter(&g, c(0.5, 0.0), 0.4).is_err());

    // oracle: coefficients of exp(1 + w) are e/n!
    let e = CoeffSeries::exp(60).to_germ();
    let h = recenter(&e, c(1.0, 0.0), 0.4).unwrap();
    let mut fact = 1.0;
    for n in 0..20 {
        assert!(close(h.coefficients[n], c(std::f64::consts::E / fact, 0.0), 1e-13), "n = {n}");
        fact *= (n + 1) as f64;
    }
}

#[test]
fn radius_examples() {
    let r = radius_estimate(&CoeffSeries::geometric(c(2.0, 0.0), 256)).unwrap();
    assert!((r - 0.5).abs() < 1e-12);
    // oracle: the ratio test on the exact binomial coefficients
    let f = inverse_sqrt_coeffs(4096);
    let ratio = (f.coefficients[4094] / f.coefficients[4095]).norm();
    assert!((ratio - 1.0).abs() < 1e-3);
    let r = radius_estimate(&CoeffSeries::new(f.coefficients, None)).unwrap();
    assert!((r - ratio).abs() < 0.05);
    let poly = CoeffSeries::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], None);
    assert_eq!(radius_estimate(&poly), None);
}

#[test]
fn short_sequences_are_constants() {
    let g = Germ::new(c(1.0, 0.0), vec![c(3.0, 0.0)], 0.1);
    assert_eq!(g.trust_radius, f64::INFINITY);
    assert_eq!(germ_eval(&g, c(100.0, 0.0)).unwrap().value, c(3.0, 0.0));
    let empty = Germ::new(c(0.0, 0.0), Vec::new(), 1.0);
    assert_eq!(germ_eval(&empty, c(5.0, 0.0)).unwrap().value, c(0.0, 0.0));
}

#[test]
fn coefficient_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeffs.csv");
    let data = inverse_sqrt_coeffs(100).coefficients;
    write_coeff_csv(&path, &data).unwrap();
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("n,re,im\n"));
    assert_eq!(read_coeff_csv(&path).unwrap(), data);
}

fn complex(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r).prop_map(|(x, y)| c(x, y))
}

fn series(len: usize) -> impl Strategy<Value = CoeffSeries> {
    prop::collection::vec(complex(3.0), len).prop_map(|v| CoeffSeries::new(v, None))
}

proptest! {
    #[test]
    fn hadamard_is_commutative_associative_with_identity(f in series(32), g in series(32), h in series(32)) {
        prop_assert_eq!(hadamard_coeffs(&f, &g).coefficients, hadamard_coeffs(&g, &f).coefficients);
        let left = hadamard_coeffs(&hadamard_coeffs(&f, &g), &h);
        let right = hadamard_coeffs(&f, &hadamard_coeffs(&g, &h));
        for (a, b) in left.coefficients.iter().zip(&right.coefficients) {
            prop_assert!((a - b).norm() <= 4.0 * f64::EPSILON * a.norm().max(b.norm()));
        }
        let one = CoeffSeries::geometric(c(1.0, 0.0), 32);
        prop_assert_eq!(hadamard_coeffs(&f, &one).coefficients, f.coefficients.clone());
    }

    #[test]
    fn two_recenter_steps_agree_with_one(
        s1 in complex(0.3),
        s2 in complex(0.3),
        probes in prop::collection::vec((0.0f64..1.0, 0.0f64..std::f64::consts::TAU), 20),
    ) {
        // e^z / (1 − z/2), radius 2
        let m = 256;
        let e = CoeffSeries::exp(m);
        let g = CoeffSeries::geometric(c(0.5, 0.0), m);
        let mut prod = vec![c(0.0, 0.0); m];
        for i in 0..m {
            for j in 0..m - i {
                prod[i + j] += e.coefficients[i] * g.coefficients[j];
            }
        }
        let germ = Germ::new(c(0.0, 0.0), prod, 2.0);
        let (c1, c2) = (s1, s1 + s2);
        let two = recenter(&recenter(&germ, c1, 0.4).unwrap(), c2, 0.4).unwrap();
        let one = recenter(&germ, c2, 0.4).unwrap();
        let overlap = 0.5 * two.trust_radius.min(one.trust_radius);
        for (r, t) in probes {
            let z = c2 + C64::from_polar(r * overlap, t);
            let (a, b) = (germ_eval(&two, z).unwrap(), germ_eval(&one, z).unwrap());
            // plus rounding of the two final evaluations
            let allowed = two.err_bound + one.err_bound + a.tail_estimate + b.tail_estimate + 8.0 * f64::EPSILON * a.value.norm();
            let exact = z.exp() / (1.0 - z / 2.0);
            prop_assert!((a.value - b.value).norm() <= allowed, "{} vs {}, allowed {allowed}", a.value, b.value);
            prop_assert!((a.value - exact).norm() <= 1e-10 * exact.norm());
        }
    }
}
