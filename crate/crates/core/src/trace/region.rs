use crate::{Error, Result};
use num_complex::Complex64;
use num_integer::Roots;
use num_rational::Ratio;

/// Whether `lambda = x + iy` lies in `{x + y^2/(4 alpha^2) <= alpha^2}`.
pub fn s_alpha_member(alpha_sq: Ratio<i128>, x: Ratio<i128>, y: Ratio<i128>) -> Result<bool> {
    if alpha_sq <= Ratio::from(0) {
        return Err(Error::Domain(format!("alpha^2 = {alpha_sq} must be positive")));
    }
    Ok(x + y * y / (alpha_sq * 4) <= alpha_sq)
}

/// Root of `s(s+1) + 1/4 = lambda` with `Re s >= -1/2`.
pub fn pole_to_s(lambda: Complex64) -> Complex64 {
    lambda.sqrt() - 0.5
}

/// Exact [`pole_to_s`] when `lambda` is the square of a rational.
pub fn pole_to_s_exact(lambda: Ratio<i128>) -> Option<Ratio<i128>> {
    if lambda < Ratio::from(0) {
        return None;
    }
    let (n, d) = (*lambda.numer(), *lambda.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (rn * rn == n && rd * rd == d).then(|| Ratio::new(rn, rd) - Ratio::new(1, 2))
}
