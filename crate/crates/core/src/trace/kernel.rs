use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Coefficients of `p_N`, lowest degree first, where
/// `phi_hat_N(x) = |x|^{2N-1} p_N(1 / (|x| sqrt(lambda))) e^{-|x| sqrt(lambda)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPoly {
    pub n: u32,
    pub coeffs: Vec<BigRational>,
}

impl KernelPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap()).collect()
    }
}

/// `p_1(u) = u/2` and `p_{N+1}(u) = (u/2)(u^2 p_N'(u) + p_N(u))`, which is
/// `-d/d lambda` written in the variable `u`.
pub fn p_n_coeffs(n: u32) -> Result<KernelPoly> {
    if n == 0 {
        return Err(Error::Domain("resolvent power N must be at least 1".into()));
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut c = vec![BigRational::zero(), half.clone()];
    for _ in 1..n {
        let mut next = vec![BigRational::zero(); c.len() + 2];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] += ck * &half;
            next[k + 2] += ck * &half * BigRational::from_integer(BigInt::from(k));
        }
        c = next;
    }
    Ok(KernelPoly { n, coeffs: c })
}

/// Fourier transform of `(N-1)! (y^2 + lambda)^{-N}` with the `1/(2 pi)`
/// normalization.
pub fn phi_hat(n: u32, lambda: f64, x: f64) -> Result<f64> {
    let p = p_n_coeffs(n)?.to_f64();
    phi_hat_with(&p, n, lambda, x)
}

/// As [`phi_hat`] with precomputed coefficients of `p_N`.
pub fn phi_hat_with(p: &[f64], n: u32, lambda: f64, x: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("lambda = {lambda} must be positive")));
    }
    if n == 0 {
        return Err(Error::Domain("resolvent power N must be at least 1".into()));
    }
    let r = lambda.sqrt();
    let a = x.abs();
    if a == 0.0 {
        // (-d/d lambda)^{N-1} of 1/(2 sqrt(lambda))
        let prod: f64 = (0..n - 1).map(|j| j as f64 + 0.5).product();
        return Ok(0.5 * prod * lambda.powf(-(n as f64 - 0.5)));
    }
    // |x|^{2N-1} sum c_k (|x| r)^{-k} = sum c_k |x|^{2N-1-k} r^{-k}
    let mut s = 0.0;
    for (k, &ck) in p.iter().enumerate().rev() {
        if ck != 0.0 {
            s += ck * a.powi(2 * n as i32 - 1 - k as i32) * r.powi(-(k as i32));
        }
    }
    Ok(s * (-a * r).exp())
}
