use super::kernel::{p_n_coeffs, phi_hat_with};
use super::sum::pairwise_sum;
use crate::census::{Census, GeodesicClass};
use crate::exact::{regulator_and_length, UnitPoly};
use crate::reps::tr_psi_exact;
use crate::{Error, Result};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;

/// `|D(gamma)| = |det(1 - Ad(gamma^{-1}))|` on the complement of the
/// centralizer, which equals `-disc(f)`.
pub fn d_of_gamma(p: UnitPoly) -> Result<i128> {
    p.require_admissible()?;
    Ok(-p.disc())
}

/// `-det(1 - eta(gamma))`, positive for admissible `p`.
fn neg_det_eta(p: UnitPoly) -> f64 {
    let v = tr_psi_exact(&p.companion()).expect("companion matrix has determinant one");
    -v.to_f64().unwrap()
}

/// `-det(1 - eta(gamma)) |D|^{-1/2} e^{-l/2}` at a given length `l`.
pub fn c_gamma_at(p: UnitPoly, l: f64) -> Result<f64> {
    let d = d_of_gamma(p)? as f64;
    Ok(neg_det_eta(p) / d.sqrt() * (-0.5 * l).exp())
}

pub fn c_gamma(p: UnitPoly, precision: Ratio<i64>) -> Result<f64> {
    let rl = regulator_and_length(p, precision)?;
    c_gamma_at(p, rl.l)
}

/// `|D|^{-1/2} phi_hat_N(l)` for a splitrank-one class.
pub fn orbital_integral(rec: &GeodesicClass, n: u32, lambda: f64) -> Result<f64> {
    let p = p_n_coeffs(n)?.to_f64();
    let d = d_of_gamma(rec.poly)? as f64;
    Ok(phi_hat_with(&p, n, lambda, rec.l)? / d.sqrt())
}

/// Regular elements of splitrank two have vanishing orbital integral.
pub fn orbital_integral_splitrank_two(n: u32, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || n == 0 {
        return Err(Error::Domain(format!("need N >= 1 and lambda > 0, got N = {n}, lambda = {lambda}")));
    }
    Ok(0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricSide {
    pub value: f64,
    /// Magnitude bound for the classes beyond `l_cut`, from the density `e^l / l`.
    pub tail_estimate: f64,
    pub terms: usize,
}

fn check_cut(c: &Census, l_cut: f64) -> Result<()> {
    if !(l_cut >= 0.0) || l_cut > 3.0 * c.r_max + 1e-9 {
        return Err(Error::Domain(format!(
            "L_cut = {l_cut} exceeds the census range 3 r_max = {}",
            3.0 * c.r_max
        )));
    }
    Ok(())
}

/// `int_L^inf l^m e^{-beta l} dl` for integer `m >= 0`.
fn upper_gamma_int(m: u32, beta: f64, l: f64) -> f64 {
    let z = beta * l;
    let mut term = 1.0;
    let mut s = 1.0;
    for j in 1..=m {
        term *= z / j as f64;
        s += term;
    }
    let fact: f64 = (1..=m).map(|j| j as f64).product();
    fact * (-z).exp() * s / beta.powi(m as i32 + 1)
}

/// Both inverse classes counted: each record stands for `gamma` and
/// `gamma^{-1}`, which share length, `D` and `det(1 - eta)`.
pub fn geometric_side(c: &Census, n: u32, lambda: f64, l_cut: f64) -> Result<GeometricSide> {
    check_cut(c, l_cut)?;
    let p = p_n_coeffs(n)?;
    let pf = p.to_f64();
    phi_hat_with(&pf, n, lambda, 1.0)?;
    let terms: Vec<f64> = c
        .records
        .par_iter()
        .filter(|r| r.l <= l_cut)
        .map(|r| {
            let d = d_of_gamma(r.poly).unwrap() as f64;
            let det = -neg_det_eta(r.poly);
            2.0 * r.l0() * det / d.sqrt() * phi_hat_with(&pf, n, lambda, r.l).unwrap()
        })
        .collect();
    let root = lambda.sqrt();
    let tail_estimate = if root <= 1.5 {
        f64::INFINITY
    } else {
        // 2 int_L^inf e^{3l/2} phi_hat_N(l) dl, termwise in the expansion of p_N
        let beta = root - 1.5;
        let deg = 2 * n - 1;
        2.0 * pf
            .iter()
            .enumerate()
            .filter(|(_, &ck)| ck != 0.0)
            .map(|(k, &ck)| ck * root.powi(-(k as i32)) * upper_gamma_int(deg - k as u32, beta, l_cut))
            .sum::<f64>()
    };
    Ok(GeometricSide { value: pairwise_sum(&terms), tail_estimate, terms: terms.len() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LSeries {
    pub partial_sum: f64,
    /// Heuristic band for the omitted classes around `e^{-(s-1) L} / (s-1)`.
    pub tail_low: f64,
    pub tail_high: f64,
    pub terms: usize,
}

/// `sum l(gamma_0) c_gamma e^{-l s}` over one class per inverse pair.
pub fn l_series(c: &Census, s: f64, l_cut: f64) -> Result<LSeries> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("s = {s} must exceed 1")));
    }
    check_cut(c, l_cut)?;
    let terms: Vec<f64> = c
        .records
        .par_iter()
        .filter(|r| r.l <= l_cut)
        .map(|r| r.l0() * c_gamma_at(r.poly, r.l).unwrap() * (-r.l * s).exp())
        .collect();
    let h = (-(s - 1.0) * l_cut).exp() / (s - 1.0);
    Ok(LSeries { partial_sum: pairwise_sum(&terms), tail_low: 0.5 * h, tail_high: 2.0 * h, terms: terms.len() })
}
