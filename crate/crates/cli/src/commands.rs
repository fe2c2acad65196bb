use crate::cache::{self, Snapshot};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::format::{Cell, Format, Table};
use crate::parabolic;
use cubic_core::census::{census_counts, pgt_ratio, run_sweep_sharded, Adjudication, Census};
use cubic_core::exact::{regulator_and_length, UnitPoly};
use cubic_core::orders::{class_number, maximal_over, minkowski_index_bound, order_from_poly};
use cubic_core::reps::{tr_psi_exact, verify_reps, Pole};
use cubic_core::trace::{c_gamma_at, d_of_gamma, geometric_side, l_series, phi_hat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use std::fmt::Write;

/// Text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn check_precision(cfg: &RunConfig, snap: &Snapshot) -> CliResult<()> {
    match snap.coverage {
        Some((_, p)) if p != cfg.precision => Err(CliError::Cache {
            path: cfg.cache.clone(),
            msg: format!("built with precision {p}, requested {}", cfg.precision),
        }),
        _ => Ok(()),
    }
}

/// Runs or extends the sweep; a cache that already covers `r_max` is only
/// verified.
pub fn sweep(cfg: &RunConfig) -> CliResult<Output> {
    let r_max = cfg.require_r_max()?;
    let snap = cache::load(&cfg.cache)?;
    check_precision(cfg, &snap)?;
    let (census, new) = if snap.covered() >= r_max {
        (snap.census(r_max), 0)
    } else {
        let c = run_sweep_sharded(r_max, cfg.precision, cfg.shards)?;
        let new = cache::append(&cfg.cache, &snap, &cache::entries_of(&c))?;
        (c, new)
    };
    let rows = census_counts(&census, &[r_max])?;
    let row = &rows[0];
    let h = match row.adjudication {
        Adjudication::Total => row.sum_h_total,
        _ => row.sum_h_proper,
    };
    let primitive = census.primitive().count();
    let orders = census.orders.values().filter(|o| o.r <= r_max).count();
    Ok(format!(
        "{}, {}, \u{3a3}h = {h}\n{}\n",
        plural(primitive, "primitive class", "primitive classes"),
        plural(orders, "order", "orders"),
        plural(new, "new record", "new records")
    )
    .into())
}

fn load_covering(cfg: &RunConfig, need: f64) -> CliResult<Census> {
    let snap = cache::load(&cfg.cache)?;
    check_precision(cfg, &snap)?;
    if snap.coverage.is_none() || snap.covered() + 1e-12 < need {
        return Err(CliError::Cache {
            path: cfg.cache.clone(),
            msg: format!(
                "covers R <= {}, but R <= {need} is needed; run `cubic-census sweep --r-max {need}` first",
                snap.covered()
            ),
        });
    }
    Ok(snap.census(snap.covered()))
}

/// Default grid `0.5, 1, ...` up to the coverage.
fn default_grid(r: f64) -> Vec<f64> {
    (1..).map(|k| 0.5 * k as f64).take_while(|&x| x <= r + 1e-12).collect()
}

pub fn census(cfg: &RunConfig, grid: Option<Vec<f64>>) -> CliResult<Output> {
    let mut t = Table::new(&[
        "x",
        "pi",
        "sum_h_total",
        "sum_h_proper",
        "main_term",
        "ratio_total",
        "ratio_proper",
        "adjudication",
    ]);
    if grid.as_ref().is_some_and(|g| g.is_empty()) {
        return Ok(t.render(cfg.format).into());
    }
    let need = grid.as_ref().map(|g| g.iter().cloned().fold(0.0, f64::max)).unwrap_or(0.0);
    let c = load_covering(cfg, need)?;
    let grid = grid.unwrap_or_else(|| default_grid(c.r_max));
    for row in census_counts(&c, &grid)? {
        t.push(vec![
            row.x.into(),
            row.pi.into(),
            row.sum_h_total.into(),
            row.sum_h_proper.into(),
            row.main_term.into(),
            row.ratio_total().into(),
            row.ratio_proper().into(),
            row.adjudication.to_string().into(),
        ]);
    }
    Ok(t.render(cfg.format).into())
}

/// Per-record table joined with the data of each record's order.
pub fn records(cfg: &RunConfig) -> CliResult<Output> {
    let c = load_covering(cfg, cfg.r_max.unwrap_or(0.0))?;
    let c = match cfg.r_max {
        Some(r) => c.truncate(r),
        None => c,
    };
    let mut t = Table::new(&[
        "t",
        "s",
        "disc",
        "R",
        "l",
        "N",
        "order_disc",
        "order_index",
        "h_total",
        "h_proper",
        "primitive",
        "mu",
    ]);
    for r in &c.records {
        let o = c.orders.get(&r.order).ok_or_else(|| CliError::Cache {
            path: cfg.cache.clone(),
            msg: format!("record {} refers to missing order {}", r.poly, r.order),
        })?;
        t.push(vec![
            r.poly.t.into(),
            r.poly.s.into(),
            r.poly.disc().into(),
            (r.l / 3.0).into(),
            r.l.into(),
            r.norm().into(),
            o.disc.into(),
            o.index.to_string().into(),
            o.h_total.into(),
            o.h_proper.into(),
            r.primitive.into(),
            r.mu.into(),
        ]);
    }
    Ok(t.render(cfg.format).into())
}

pub fn pgt(cfg: &RunConfig, xs: Vec<f64>) -> CliResult<Output> {
    let mut t = Table::new(&["x", "value", "reference", "ratio"]);
    if xs.is_empty() {
        return Ok(t.render(cfg.format).into());
    }
    let need = xs.iter().map(|x| x.ln() / 3.0).fold(0.0, f64::max);
    let c = load_covering(cfg, need)?;
    for x in xs {
        let ratio = pgt_ratio(&c, x)?;
        let pi = c.primitive().filter(|r| r.l <= x.ln()).count() as u64;
        t.push(vec![x.into(), pi.into(), (x / x.ln()).into(), ratio.into()]);
    }
    Ok(t.render(cfg.format).into())
}

pub fn lseries(cfg: &RunConfig, ss: Vec<f64>, l_cut: Option<f64>) -> CliResult<Output> {
    let mut t = Table::new(&["s", "partial_sum", "tail_low", "tail_high", "L_cut", "residue_estimate"]);
    if ss.is_empty() {
        return Ok(t.render(cfg.format).into());
    }
    let c = load_covering(cfg, l_cut.map(|l| l / 3.0).unwrap_or(0.0))?;
    let cut = l_cut.unwrap_or(3.0 * c.r_max);
    for s in ss {
        let l = l_series(&c, s, cut)?;
        t.push(vec![
            s.into(),
            l.partial_sum.into(),
            l.tail_low.into(),
            l.tail_high.into(),
            cut.into(),
            ((s - 1.0) * l.partial_sum).into(),
        ]);
    }
    Ok(t.render(cfg.format).into())
}

pub fn geometric(cfg: &RunConfig, n: u32, lambdas: Vec<f64>, l_cut: Option<f64>) -> CliResult<Output> {
    let mut t = Table::new(&["lambda", "N", "value", "tail_estimate", "L_cut", "terms"]);
    if lambdas.is_empty() {
        return Ok(t.render(cfg.format).into());
    }
    let c = load_covering(cfg, l_cut.map(|l| l / 3.0).unwrap_or(0.0))?;
    let cut = l_cut.unwrap_or(3.0 * c.r_max);
    for lambda in lambdas {
        let g = geometric_side(&c, n, lambda, cut)?;
        t.push(vec![lambda.into(), n.into(), g.value.into(), g.tail_estimate.into(), cut.into(), g.terms.into()]);
    }
    Ok(t.render(cfg.format).into())
}

pub fn kernel(cfg: &RunConfig, n: u32, lambda: f64, xs: Vec<f64>) -> CliResult<Output> {
    let mut t = Table::new(&["lambda", "N", "x", "value"]);
    for x in xs {
        t.push(vec![lambda.into(), n.into(), x.into(), phi_hat(n, lambda, x)?.into()]);
    }
    Ok(t.render(cfg.format).into())
}

fn poles_json(p: &[Pole]) -> Value {
    Value::Array(
        p.iter()
            .map(|p| json!({"location": p.location.to_string(), "coefficient": p.coefficient}))
            .collect(),
    )
}

fn poles_text(p: &[Pole]) -> String {
    p.iter()
        .map(|p| format!("{:+} at {}", p.coefficient, p.location))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Checks every representation-theoretic identity; exit code 1 on any
/// mismatch. The sign audit is informational.
pub fn reps(cfg: &RunConfig) -> CliResult<Output> {
    let report = verify_reps()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut parabolic_ok = [0usize; 3];
    for (shape, ok) in parabolic_ok.iter_mut().enumerate() {
        for _ in 0..100 {
            let g = parabolic::sample(&mut rng, shape);
            if tr_psi_exact(&g)? == 0.into() {
                *ok += 1;
            }
        }
    }
    let parabolic_match = parabolic_ok == [100; 3];
    let all = report.all_match() && parabolic_match;
    let a = &report.audit;
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::new();
            for i in &report.items {
                writeln!(s, "{} {}: expected {}, computed {}", i.status, i.name, i.expected, i.computed).unwrap();
            }
            writeln!(
                s,
                "{} parabolic regularity (seed {}): tr psi = 0 on {}/{}/{} of 100 samples per parabolic",
                if parabolic_match { "MATCH" } else { "MISMATCH" },
                cfg.seed,
                parabolic_ok[0],
                parabolic_ok[1],
                parabolic_ok[2]
            )
            .unwrap();
            writeln!(s, "sign audit (informational):").unwrap();
            writeln!(s, "  computed coefficients: {}", poles_text(&a.computed)).unwrap();
            writeln!(s, "  reference coefficients: {}", poles_text(&a.reference)).unwrap();
            writeln!(
                s,
                "  locations match: {}, magnitudes match: {}, signs match: {}",
                a.locations_match, a.magnitudes_match, a.signs_match
            )
            .unwrap();
            writeln!(
                s,
                "  implied residue at s = 1: computed {}, reference {}",
                a.implied_residue_computed, a.implied_residue_reference
            )
            .unwrap();
            writeln!(
                s,
                "  consistent with a negative geometric side: computed {}, reference {}",
                a.computed_consistent_with_negative_geometric_side, a.reference_consistent_with_negative_geometric_side
            )
            .unwrap();
            writeln!(s, "{}", if all { "all items MATCH" } else { "MISMATCH present" }).unwrap();
            s
        }
        Format::Json => {
            let items: Vec<Value> = report
                .items
                .iter()
                .map(|i| {
                    json!({"name": i.name, "expected": i.expected, "computed": i.computed, "status": i.status.to_string()})
                })
                .collect();
            let v = json!({
                "items": items,
                "parabolic_regularity": {
                    "seed": cfg.seed,
                    "zero_counts": parabolic_ok,
                    "samples_per_parabolic": 100,
                    "status": if parabolic_match { "MATCH" } else { "MISMATCH" },
                },
                "sign_audit": {
                    "computed": poles_json(&a.computed),
                    "reference": poles_json(&a.reference),
                    "locations_match": a.locations_match,
                    "magnitudes_match": a.magnitudes_match,
                    "signs_match": a.signs_match,
                    "implied_residue_computed": a.implied_residue_computed.to_string(),
                    "implied_residue_reference": a.implied_residue_reference.to_string(),
                    "computed_consistent_with_negative_geometric_side": a.computed_consistent_with_negative_geometric_side,
                    "reference_consistent_with_negative_geometric_side": a.reference_consistent_with_negative_geometric_side,
                },
                "all_match": all,
            });
            let mut s = serde_json::to_string_pretty(&v).unwrap();
            s.push('\n');
            s
        }
    };
    Ok(Output { text, code: if all { 0 } else { 1 } })
}

fn key_values(cfg: &RunConfig, kv: Vec<(&'static str, Cell)>) -> String {
    match cfg.format {
        Format::Csv => {
            let mut t = Table::new(&["key", "value"]);
            for (k, v) in kv {
                t.push(vec![k.into(), v]);
            }
            t.render(Format::Csv)
        }
        Format::Json => {
            let mut t = Table::new(&[]);
            let mut row = Vec::new();
            for (k, v) in kv {
                t.columns.push(k);
                row.push(v);
            }
            t.push(row);
            let Value::Array(mut a) = t.to_json_value() else { unreachable!() };
            let v = a.pop().unwrap_or(Value::Object(Map::new()));
            let mut s = serde_json::to_string_pretty(&v).unwrap();
            s.push('\n');
            s
        }
    }
}

/// Facts about `Z[x]/(f)` for one polynomial.
pub fn order(cfg: &RunConfig, p: UnitPoly) -> CliResult<Output> {
    p.require_admissible()?;
    let c = p.canonical();
    let rl = regulator_and_length(c, cfg.precision)?;
    let z = order_from_poly(c)?;
    let top = maximal_over(&z)?;
    let kv = vec![
        ("poly", p.to_string().into()),
        ("canonical", c.to_string().into()),
        ("disc", p.disc().into()),
        ("D", d_of_gamma(p)?.into()),
        ("R", rl.r.into()),
        ("R_err", rl.r_err.into()),
        ("l", rl.l.into()),
        ("N", rl.l.exp().into()),
        ("tr_psi", tr_psi_exact(&p.companion())?.to_string().into()),
        ("c_gamma", c_gamma_at(p, rl.l)?.into()),
        ("order_key", z.key().into()),
        ("maximal_order_key", top.key().into()),
        ("field_disc", top.disc.into()),
        ("index_in_maximal", (top.index() / z.index()).to_string().into()),
    ];
    Ok(key_values(cfg, kv).into())
}

/// Class numbers of `Z[x]/(f)` by lattice enumeration up to isomorphism.
pub fn class_number_cmd(cfg: &RunConfig, p: UnitPoly) -> CliResult<Output> {
    p.require_admissible()?;
    let z = order_from_poly(p.canonical())?;
    let (total, proper) = class_number(&z)?;
    let kv = vec![
        ("poly", p.to_string().into()),
        ("order_key", z.key().into()),
        ("order_disc", z.disc.into()),
        ("minkowski_index_bound", minkowski_index_bound(&z).into()),
        ("h_total", total.into()),
        ("h_proper", proper.into()),
    ];
    Ok(key_values(cfg, kv).into())
}
