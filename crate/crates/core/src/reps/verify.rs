use super::character::{
    branch_k_to_m0, branch_k_to_so2, branch_to_k, decompose, eta_char, irr_char, psi_char, wedge, Character,
    VirtualDecomp,
};
use super::matrix::tr_psi_exact;
use super::spectral::{b_rho, b_rho_1, b_rho_m1, casimir, sign_audit, tau0, trivial_poles, SignAudit, Q};
use crate::exact::UnitPoly;
use crate::Result;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportItem {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepsReport {
    pub items: Vec<ReportItem>,
    pub audit: SignAudit,
}

impl RepsReport {
    pub fn all_match(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Match)
    }
}

fn fmt_weights(d: &VirtualDecomp<(i64, i64)>) -> String {
    let mut v: Vec<_> = d.iter().collect();
    v.sort_by_key(|((a, b), _)| (*a, *b));
    v.iter()
        .map(|((a, b), m)| format!("{m}W({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_k(d: &VirtualDecomp<u32>) -> String {
    d.iter()
        .map(|(k, m)| format!("{m}d{}", 2 * k))
        .collect::<Vec<_>>()
        .join(" ")
}

struct Builder(Vec<ReportItem>);

impl Builder {
    fn item(&mut self, name: &str, expected: String, computed: String) {
        let status = if expected == computed { Status::Match } else { Status::Mismatch };
        self.0.push(ReportItem { name: name.into(), expected, computed, status });
    }
}

/// Recomputes every representation-theoretic identity used by the trace
/// formula and compares it with the reference value.
pub fn verify_reps() -> Result<RepsReport> {
    let mut r = Builder(Vec::new());

    let psi_expected: VirtualDecomp<(i64, i64)> =
        BTreeMap::from([((0, 0), 2), ((2, 0), -1), ((2, 2), -1), ((3, 1), 1), ((3, 2), 1), ((3, 0), -1), ((3, 3), -1)]);
    r.item("psi decomposition", fmt_weights(&psi_expected), fmt_weights(&decompose(&psi_char())?));
    r.item("dim eta", "6".into(), eta_char().dim().to_string());
    r.item("dim psi", "0".into(), psi_char().dim().to_string());
    let w3 = BTreeMap::from([((3, 0), 1), ((3, 3), 1)]);
    r.item("wedge^3 eta", fmt_weights(&w3), fmt_weights(&decompose(&wedge(&eta_char(), 3))?));
    for (a, b, d) in [(2, 0, 6), (3, 1, 15), (3, 0, 10), (3, 3, 10)] {
        r.item(&format!("dim W({a},{b})"), d.to_string(), irr_char(a, b)?.dim().to_string());
    }

    let table: [((i64, i64), &[(u32, i64)], Q); 3] = [
        ((2, 0), &[(0, 1), (2, 1)], Q::new(10, 9)),
        ((3, 1), &[(1, 1), (2, 1), (3, 1)], Q::new(16, 9)),
        ((3, 0), &[(1, 1), (3, 1)], Q::from(2)),
    ];
    for ((a, b), k, c) in table {
        let expected: VirtualDecomp<u32> = k.iter().copied().collect();
        r.item(&format!("W({a},{b})|K"), fmt_k(&expected), fmt_k(&branch_to_k(a, b)?));
        r.item(&format!("C on W({a},{b})"), c.to_string(), casimir(a, b)?.to_string());
    }
    for ((a, b), (c, d)) in [((3, 1), (3, 2)), ((3, 0), (3, 3)), ((2, 0), (2, 2))] {
        r.item(
            &format!("C on W({c},{d})"),
            casimir(a, b)?.to_string(),
            casimir(c, d)?.to_string(),
        );
    }

    for (k, m) in [(0, [1, 0, 0, 0]), (1, [0, 1, 1, 1]), (2, [2, 1, 1, 1])] {
        r.item(&format!("d{}|M0", 2 * k), format!("{m:?}"), format!("{:?}", branch_k_to_m0(k)));
    }
    for (k, e) in [(0, "[0]"), (1, "[-1, 0, 1]"), (2, "[-2, -1, 0, 1, 2]")] {
        let got: Vec<i32> = branch_k_to_so2(k).terms().keys().copied().collect();
        r.item(&format!("d{}|SO(2)", 2 * k), e.into(), format!("{got:?}"));
    }

    r.item("tau0", "-2d0 -1d2 1d4".into(), fmt_k(&tau0()));
    r.item("B(rho_1)", "1/4".into(), b_rho_1().to_string());
    r.item("B(rho_M1)", "1/12".into(), b_rho_m1().to_string());
    r.item("B(rho)", (b_rho_1() + b_rho_m1()).to_string(), b_rho().to_string());

    let (contribs, _) = trivial_poles()?;
    let pairing = |w: (i64, i64)| {
        contribs
            .iter()
            .find(|c| c.weight == w)
            .map(|c| c.k_pairing.to_string())
            .unwrap_or_else(|| "absent".into())
    };
    for (w, k) in [((0, 0), -2), ((2, 0), -1), ((3, 1), 0), ((3, 0), -1)] {
        r.item(&format!("K(W({},{}))", w.0, w.1), k.to_string(), pairing(w));
    }

    let audit = sign_audit()?;
    let locs = |v: &[super::spectral::Pole]| {
        v.iter().map(|p| p.location.to_string()).collect::<Vec<_>>().join(" ")
    };
    let mags = |v: &[super::spectral::Pole]| {
        v.iter().map(|p| p.coefficient.abs().to_string()).collect::<Vec<_>>().join(" ")
    };
    r.item("trivial term pole locations", locs(&audit.reference), locs(&audit.computed));
    r.item("trivial term pole magnitudes", mags(&audit.reference), mags(&audit.computed));

    let plastic = UnitPoly::new(0, -1).companion();
    r.item("tr psi on companion of 0,-1", "-1".into(), tr_psi_exact(&plastic)?.to_string());
    r.item(
        "tr psi on unipotent",
        "0".into(),
        tr_psi_exact(&[[1, 5, -7], [0, 1, 3], [0, 0, 1]])?.to_string(),
    );

    Ok(RepsReport { items: r.0, audit })
}
