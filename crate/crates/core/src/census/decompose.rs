use crate::exact::{newton_power, regulator_and_length, UnitPoly};
use crate::orders::CubicField;
use num_complex::Complex64;
use num_rational::Ratio;
use std::f64::consts::PI;

/// Writes `p = root^mu` with `mu` maximal, by extracting numeric roots of
/// the eigenvalues and verifying integrality exactly.
///
/// `r_min_known` is a lower bound for the regulator of any unit.
pub fn power_decompose(p: UnitPoly, r_min_known: f64) -> (UnitPoly, u32) {
    let canon = p.canonical();
    let Ok(rl) = regulator_and_length(canon, Ratio::new(1, 1 << 40)) else {
        return (p, 1);
    };
    let Ok(field) = CubicField::new(canon) else {
        return (p, 1);
    };
    let max_mu = ((rl.r + rl.r_err) / r_min_known + 1e-9).floor() as u32;
    let lam = field.real;
    let z = field.complex;
    for mu in (2..=max_mu).rev() {
        let inv = 1.0 / mu as f64;
        let lam_r = lam.powf(inv);
        for j in 0..mu {
            let arg = (z.arg() + 2.0 * PI * j as f64) * inv;
            let zr = Complex64::from_polar(z.norm().powf(inv), arg);
            let t = (lam_r + 2.0 * zr.re).round();
            let s = (2.0 * lam_r * zr.re + zr.norm_sqr()).round();
            if t.abs() > 9.0e15 || s.abs() > 9.0e15 {
                continue;
            }
            let cand = UnitPoly::new(t as i64, s as i64);
            if cand.is_admissible() && newton_power(cand, mu) == canon {
                let root = if p.is_canonical() { cand } else { cand.inverse() };
                return (root, mu);
            }
        }
    }
    (p, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r0 = 0.2811995;
        assert_eq!(power_decompose(UnitPoly::new(2, 1), r0), (UnitPoly::new(0, -1), 2));
        assert_eq!(power_decompose(UnitPoly::new(3, 2), r0), (UnitPoly::new(0, -1), 3));
        assert_eq!(power_decompose(UnitPoly::new(1, 0), r0), (UnitPoly::new(1, 0), 1));
    }

    #[test]
    fn high_powers() {
        let r0 = 0.2811995;
        for base in [UnitPoly::new(0, -1), UnitPoly::new(1, 0), UnitPoly::new(3, 1)] {
            for mu in 2..=9 {
                let q = newton_power(base, mu);
                assert_eq!(power_decompose(q, r0), (base, mu), "{base}^{mu}");
                assert_eq!(power_decompose(q.inverse(), r0), (base.inverse(), mu));
            }
        }
    }
}
