//! Dense polynomials with complex coefficients, stored lowest degree first.

use num_complex::Complex64;

pub type Poly = Vec<Complex64>;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(zero(), |acc, &c| acc * z + c)
}

pub fn derivative(p: &[Complex64]) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

pub fn add(p: &[Complex64], q: &[Complex64]) -> Poly {
    let n = p.len().max(q.len());
    (0..n)
        .map(|i| p.get(i).copied().unwrap_or_default() + q.get(i).copied().unwrap_or_default())
        .collect()
}

pub fn scale(p: &[Complex64], s: Complex64) -> Poly {
    p.iter().map(|&c| c * s).collect()
}

pub fn mul(p: &[Complex64], q: &[Complex64]) -> Poly {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![zero(); p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Coefficients of `p(c + w)` in powers of `w` (repeated synthetic division).
pub fn taylor_shift(p: &[Complex64], c: Complex64) -> Poly {
    let mut b = p.to_vec();
    let n = b.len();
    if c == zero() {
        return b;
    }
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = b[j + 1] * c;
            b[j] += t;
        }
    }
    b
}

/// Drops trailing zero coefficients.
pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| *c == zero()) {
        p.pop();
    }
    p
}

/// All roots of `p` by the Aberth-Ehrlich iteration.
pub fn roots(p: &[Complex64]) -> Vec<Complex64> {
    let p = trim(p.to_vec());
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let monic: Poly = p.iter().map(|&c| c / lead).collect();
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    roots_from(&monic, &mut z);
    z
}

/// Polishes the approximations `z` to the roots of `p` by Aberth-Ehrlich steps.
pub fn roots_from(p: &[Complex64], z: &mut [Complex64]) {
    let dp = derivative(p);
    let n = z.len();
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for i in 0..n {
            let pv = eval(p, z[i]);
            if pv == zero() {
                continue;
            }
            let ratio = pv / eval(&dp, z[i]);
            let mut s = zero();
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let step = ratio / (1.0 - ratio * s);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
}
