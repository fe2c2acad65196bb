use super::sweep::Census;
use crate::{Error, Result};
use std::fmt;

/// Which class-number sum equals the primitive count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjudication {
    Both,
    Total,
    Proper,
    Neither,
}

impl Adjudication {
    fn of(pi: u64, total: u64, proper: u64) -> Self {
        match (pi == total, pi == proper) {
            (true, true) => Adjudication::Both,
            (true, false) => Adjudication::Total,
            (false, true) => Adjudication::Proper,
            (false, false) => Adjudication::Neither,
        }
    }

    /// Combines pointwise verdicts into one verdict valid on the whole grid.
    pub fn combine(self, other: Adjudication) -> Adjudication {
        use Adjudication::*;
        match (self, other) {
            (Both, x) | (x, Both) => x,
            (Total, Total) => Total,
            (Proper, Proper) => Proper,
            _ => Neither,
        }
    }
}

impl fmt::Display for Adjudication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Adjudication::Both => "both",
            Adjudication::Total => "h_total",
            Adjudication::Proper => "h_proper",
            Adjudication::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountRow {
    pub x: f64,
    /// Primitive records with `l <= 3x`.
    pub pi: u64,
    pub sum_h_total: u64,
    pub sum_h_proper: u64,
    /// `e^{3x} / (3x)`, infinite at `x = 0`.
    pub main_term: f64,
    pub adjudication: Adjudication,
}

impl CountRow {
    pub fn ratio_total(&self) -> f64 {
        self.sum_h_total as f64 / self.main_term
    }

    pub fn ratio_proper(&self) -> f64 {
        self.sum_h_proper as f64 / self.main_term
    }
}

pub fn census_counts(c: &Census, x_grid: &[f64]) -> Result<Vec<CountRow>> {
    x_grid
        .iter()
        .map(|&x| {
            if !(0.0..=c.r_max + 1e-12).contains(&x) {
                return Err(Error::Domain(format!(
                    "x = {x} lies outside the census range [0, {}]",
                    c.r_max
                )));
            }
            let pi = c.primitive().filter(|r| r.l <= 3.0 * x).count() as u64;
            let (mut total, mut proper) = (0u64, 0u64);
            for o in c.orders.values().filter(|o| o.r <= x) {
                total += o.h_total;
                proper += o.h_proper;
            }
            let main_term = if x == 0.0 { f64::INFINITY } else { (3.0 * x).exp() / (3.0 * x) };
            Ok(CountRow {
                x,
                pi,
                sum_h_total: total,
                sum_h_proper: proper,
                main_term,
                adjudication: Adjudication::of(pi, total, proper),
            })
        })
        .collect()
}

/// `pi(x) log(x) / x`, where `pi(x)` counts primitive records with `N <= x`.
pub fn pgt_ratio(c: &Census, x: f64) -> Result<f64> {
    let log_x = x.ln();
    if !(x > 1.0) || log_x > 3.0 * c.r_max + 1e-12 {
        return Err(Error::Domain(format!(
            "x = {x} must satisfy 1 < x <= e^(3 r_max) = {}",
            (3.0 * c.r_max).exp()
        )));
    }
    let pi = c.primitive().filter(|r| r.l <= log_x).count() as f64;
    Ok(pi * log_x / x)
}
