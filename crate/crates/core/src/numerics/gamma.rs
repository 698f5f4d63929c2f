use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z) by the Lanczos approximation, with the reflection formula for `Re z < 1/2`.
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::GammaPole(z));
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        if s.norm() == 0.0 {
            return Err(Error::GammaPole(z));
        }
        return Ok(PI / (s * complex_gamma(1.0 - z)?));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn special_values() {
        let g = |re| complex_gamma(Complex64::new(re, 0.0)).unwrap();
        assert!(rel(g(1.0), Complex64::new(1.0, 0.0)) < 1e-14);
        assert!(rel(g(0.5), Complex64::new(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(g(5.0), Complex64::new(24.0, 0.0)) < 1e-13);
        assert!(rel(g(-0.5), Complex64::new(-2.0 * PI.sqrt(), 0.0)) < 1e-13);
    }

    #[test]
    fn poles_are_errors() {
        for n in 0..5 {
            let z = Complex64::new(-(n as f64), 0.0);
            assert_eq!(complex_gamma(z), Err(Error::GammaPole(z)));
        }
    }

    #[test]
    fn large_real_argument() {
        // 19! = 121645100408832000
        let v = complex_gamma(Complex64::new(20.0, 0.0)).unwrap();
        assert!(rel(v, Complex64::new(121_645_100_408_832_000.0, 0.0)) < 1e-13);
    }
}
