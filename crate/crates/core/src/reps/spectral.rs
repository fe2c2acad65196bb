use super::character::{branch_to_k, decompose, psi_char, VirtualDecomp};
use crate::{Error, Result};
use num_rational::Ratio;
use std::collections::BTreeMap;

pub type Q = Ratio<i64>;

/// Killing-form square of the weight `a*lambda1 + b*lambda2`.
pub fn b_form(a: Q, b: Q) -> Q {
    (a * a + b * b - a * b) / 9
}

/// `2*lambda1 + lambda2`.
pub fn rho() -> (Q, Q) {
    (Q::from(2), Q::from(1))
}

/// Restriction of the modular shift of the maximal parabolic to the torus.
pub fn rho_1() -> (Q, Q) {
    (Q::new(3, 2), Q::new(3, 2))
}

/// Modular shift of the Levi's Borel, extended trivially.
pub fn rho_m1() -> (Q, Q) {
    (Q::new(1, 2), Q::new(-1, 2))
}

pub fn b_rho() -> Q {
    let (a, b) = rho();
    b_form(a, b)
}

pub fn b_rho_1() -> Q {
    let (a, b) = rho_1();
    b_form(a, b)
}

pub fn b_rho_m1() -> Q {
    let (a, b) = rho_m1();
    b_form(a, b)
}

/// Casimir eigenvalue on `W_{a lambda1 + b lambda2}`: `B(lambda + rho) - B(rho)`.
pub fn casimir(a: i64, b: i64) -> Result<Q> {
    if !(a >= b && b >= 0) {
        return Err(Error::NonDominant(a, b));
    }
    let (r1, r2) = rho();
    Ok(b_form(Q::from(a) + r1, Q::from(b) + r2) - b_rho())
}

/// The K-type combination `delta_4 - delta_2 - 2 delta_0`, keyed by `k`.
pub fn tau0() -> VirtualDecomp<u32> {
    BTreeMap::from([(0, -2), (1, -1), (2, 1)])
}

/// `sum_k [sigma|_K : delta_2k] [tau0 : delta_2k]`.
pub fn k_pairing(a: i64, b: i64) -> Result<i64> {
    let t = tau0();
    Ok(branch_to_k(a, b)?
        .iter()
        .map(|(k, m)| m * t.get(k).copied().unwrap_or(0))
        .sum())
}

/// One pole `(lambda - location)^{-N}` of the trivial spectral term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pole {
    pub location: Q,
    pub coefficient: i64,
}

/// Coefficients paired with the poles at `9/4, 49/36, 1/4` in the
/// published form of the trivial term.
pub const REFERENCE_COEFFICIENTS: [(i64, i64, i64); 3] = [(9, 4, -2), (49, 36, -2), (1, 4, -4)];

/// Per-irreducible contribution before poles are merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralContribution {
    pub weight: (i64, i64),
    pub multiplicity: i64,
    pub k_pairing: i64,
    pub casimir: Q,
}

/// Poles of the trivial term, recomputed from the decomposition of psi,
/// the K-branching of each constituent and `tau0`. Sorted by decreasing
/// location; zero coefficients dropped.
pub fn trivial_poles() -> Result<(Vec<SpectralContribution>, Vec<Pole>)> {
    let mut contributions = Vec::new();
    let mut merged: BTreeMap<Q, i64> = BTreeMap::new();
    for ((a, b), m) in decompose(&psi_char())? {
        let k = k_pairing(a, b)?;
        let c = casimir(a, b)?;
        contributions.push(SpectralContribution { weight: (a, b), multiplicity: m, k_pairing: k, casimir: c });
        *merged.entry(b_rho_1() + c).or_insert(0) += m * k;
    }
    let poles = merged
        .into_iter()
        .rev()
        .filter(|(_, c)| *c != 0)
        .map(|(location, coefficient)| Pole { location, coefficient })
        .collect();
    Ok((contributions, poles))
}

/// `sum_sigma [psi:sigma] K(sigma) (lambda - B(rho_1) - sigma(C))^{-N}`.
pub fn trivial_spectral_term(n: u32, lambda: f64) -> Result<(f64, Vec<Pole>)> {
    if n == 0 {
        return Err(Error::Domain("resolvent power N must be at least 1".into()));
    }
    let (_, poles) = trivial_poles()?;
    let mut value = 0.0;
    for p in &poles {
        let loc = *p.location.numer() as f64 / *p.location.denom() as f64;
        let d = lambda - loc;
        if d.abs() <= 1e-12 * loc.abs().max(1.0) {
            return Err(Error::Pole(format!("lambda = {lambda} is the pole {}", p.location)));
        }
        value += p.coefficient as f64 * d.powi(-(n as i32));
    }
    Ok((value, poles))
}

/// Comparison of the recomputed pole coefficients with the reference ones.
#[derive(Debug, Clone, PartialEq)]
pub struct SignAudit {
    pub computed: Vec<Pole>,
    pub reference: Vec<Pole>,
    pub locations_match: bool,
    pub magnitudes_match: bool,
    pub signs_match: bool,
    /// Residue at `s = 1` implied by the coefficient at `9/4` when the
    /// trivial term is balanced against `-1/2` times the geometric side.
    pub implied_residue_computed: Q,
    pub implied_residue_reference: Q,
    /// A negative geometric side forces a negative coefficient at `9/4`.
    pub computed_consistent_with_negative_geometric_side: bool,
    pub reference_consistent_with_negative_geometric_side: bool,
}

pub fn sign_audit() -> Result<SignAudit> {
    let (_, computed) = trivial_poles()?;
    let reference: Vec<Pole> = REFERENCE_COEFFICIENTS
        .iter()
        .map(|&(n, d, c)| Pole { location: Q::new(n, d), coefficient: c })
        .collect();
    let locs = |v: &[Pole]| v.iter().map(|p| p.location).collect::<Vec<_>>();
    let mags = |v: &[Pole]| v.iter().map(|p| (p.location, p.coefficient.abs())).collect::<Vec<_>>();
    let main = |v: &[Pole]| {
        v.iter()
            .find(|p| p.location == Q::new(9, 4))
            .map(|p| p.coefficient)
            .unwrap_or(0)
    };
    let (cm, rm) = (main(&computed), main(&reference));
    Ok(SignAudit {
        locations_match: locs(&computed) == locs(&reference),
        magnitudes_match: mags(&computed) == mags(&reference),
        signs_match: computed == reference,
        implied_residue_computed: Q::new(-cm, 2),
        implied_residue_reference: Q::new(-rm, 2),
        computed_consistent_with_negative_geometric_side: cm < 0,
        reference_consistent_with_negative_geometric_side: rm < 0,
        computed,
        reference,
    })
}
