use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::branch::BranchTable;
use crate::germs::germ_eval;

/// Largest accepted scale-relative residual.
pub const RECURRENCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldTag {
    RationalLike,
    Real,
    Complex,
}

/// `Σ^{m+d} F = Σ_{k<d} a_k Σ^{m+k} F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceRelation {
    pub order: usize,
    pub coefficients: Vec<Complex64>,
    /// Scale-relative residual of the fit at `m = 0`.
    pub residual: f64,
    /// Scale-relative residual when the relation is applied at `m = d`.
    pub shifted_residual: f64,
    pub field_tag: FieldTag,
}

impl RecurrenceRelation {
    pub fn new(coefficients: Vec<Complex64>) -> Self {
        let field_tag = field_tag(&coefficients);
        Self { order: coefficients.len(), coefficients, residual: 0.0, shifted_residual: 0.0, field_tag }
    }

    /// `|v_{m+d} − Σ a_k v_{m+k}|` for a sequence of branch values.
    pub fn defect(&self, values: &[Complex64], m: usize) -> Complex64 {
        let pred: Complex64 = self.coefficients.iter().enumerate().map(|(k, a)| a * values[m + k]).sum();
        values[m + self.order] - pred
    }
}

/// Smallest `d ≤ d_max` whose least-squares recurrence on the branch values at
/// `test_points` leaves a residual below tolerance at `m = 0` and `m = d`.
pub fn recurrence_detect(table: &BranchTable, d_max: usize, test_points: &[Complex64]) -> Option<RecurrenceRelation> {
    let (_, hi) = table.k_range();
    let k_top = (2 * d_max).min(hi.max(0) as usize);
    let mut values: Vec<Vec<Complex64>> = Vec::new();
    for k in 0..=k_top {
        let g = &table.branches[&(k as i32)];
        let row = test_points
            .iter()
            .map(|z| germ_eval(g, *z).map(|v| v.value))
            .collect::<Result<Vec<_>, _>>()
            .ok()?;
        values.push(row);
    }
    detect_from_values(&values, d_max)
}

/// Detection from a matrix `values[k][t]` of branch `k` at test point `t`.
pub fn detect_from_values(values: &[Vec<Complex64>], d_max: usize) -> Option<RecurrenceRelation> {
    let scale = values.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let npts = values.first()?.len();
    for d in 1..=d_max {
        if 2 * d >= values.len() || npts < d {
            break;
        }
        let a: Vec<Vec<Complex64>> = (0..npts).map(|t| (0..d).map(|k| values[k][t]).collect()).collect();
        let b: Vec<Complex64> = (0..npts).map(|t| values[d][t]).collect();
        let Some(coeffs) = least_squares(&a, &b) else { continue };
        let mut rel = RecurrenceRelation::new(coeffs);
        let resid = |m: usize| {
            (0..npts)
                .map(|t| {
                    let col: Vec<Complex64> = values.iter().map(|row| row[t]).collect();
                    rel.defect(&col, m).norm()
                })
                .fold(0.0, f64::max)
                / scale
        };
        let (r0, rd) = (resid(0), resid(d));
        rel.residual = r0;
        rel.shifted_residual = rd;
        if rel.residual < RECURRENCE_TOL && rel.shifted_residual < RECURRENCE_TOL {
            return Some(rel);
        }
    }
    None
}

/// Least-squares solution of `A x = b` by modified Gram-Schmidt QR.
pub fn least_squares(a: &[Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let m = a.len();
    let n = a.first()?.len();
    if m < n {
        return None;
    }
    let mut q: Vec<Vec<Complex64>> = (0..n).map(|j| (0..m).map(|i| a[i][j]).collect()).collect();
    let mut r = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    let col_scale = q.iter().map(|c| c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()).fold(0.0, f64::max);
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let proj: Complex64 = q[i].iter().zip(&q[j]).map(|(u, v)| u.conj() * v).sum();
                r[i][j] += proj;
                let qi = q[i].clone();
                for (v, u) in q[j].iter_mut().zip(&qi) {
                    *v -= proj * u;
                }
            }
        }
        let norm = q[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-14 * col_scale {
            return None;
        }
        r[j][j] = Complex64::new(norm, 0.0);
        for v in &mut q[j] {
            *v /= norm;
        }
    }
    let qtb: Vec<Complex64> = q.iter().map(|c| c.iter().zip(b).map(|(u, v)| u.conj() * v).sum()).collect();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = qtb[i];
        for j in i + 1..n {
            s -= r[i][j] * x[j];
        }
        x[i] = s / r[i][i];
    }
    Some(x)
}

fn is_rational_like(x: f64) -> bool {
    // Continued-fraction convergents with denominators up to 1000.
    let (mut h0, mut h1) = (0.0_f64, 1.0_f64);
    let (mut k0, mut k1) = (1.0_f64, 0.0_f64);
    let mut y = x;
    for _ in 0..20 {
        let a = y.floor();
        let h = a * h1 + h0;
        let k = a * k1 + k0;
        if k > 1000.0 {
            return false;
        }
        if (h / k - x).abs() < 1e-9 {
            return true;
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = y - a;
        if frac.abs() < 1e-15 {
            return false;
        }
        y = 1.0 / frac;
    }
    false
}

pub fn field_tag(coefficients: &[Complex64]) -> FieldTag {
    let real = coefficients.iter().all(|c| c.im.abs() < 1e-9);
    if !real {
        FieldTag::Complex
    } else if coefficients.iter().all(|c| is_rational_like(c.re)) {
        FieldTag::RationalLike
    } else {
        FieldTag::Real
    }
}
