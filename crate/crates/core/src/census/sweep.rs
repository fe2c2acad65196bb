use crate::exact::{newton_power, regulator_and_length, UnitPoly};
use crate::orders::{
    class_number_via_conductor, counts, maximal_over, module_classes, order_from_poly, orders_between, unit_exponent,
    CubicField, CubicOrder, Elem, LatticeClass,
};
use crate::{Error, Result};
use num_rational::Ratio;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// One class-level census record.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicClass {
    pub poly: UnitPoly,
    /// Key of the multiplier ring of the module class.
    pub order: String,
    pub class_index: usize,
    /// Length `3 R(poly)`.
    pub l: f64,
    /// Regulator of the order (its fundamental norm-one unit).
    pub r: f64,
    pub primitive: bool,
    pub mu: u32,
    pub root_poly: UnitPoly,
}

impl GeodesicClass {
    pub fn norm(&self) -> f64 {
        self.l.exp()
    }

    /// Length of the primitive root, `3 R(order)`.
    pub fn l0(&self) -> f64 {
        3.0 * self.r
    }
}

/// Per-order data gathered by the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderSummary {
    pub key: String,
    pub disc: i128,
    /// `[O : Z[eps]]` for the field generator `eps`, as a ratio of covolumes.
    pub index: Ratio<i128>,
    /// Least `m` with `eps^m` in the order.
    pub unit_exponent: u32,
    pub r: f64,
    pub h_total: u64,
    pub h_proper: u64,
    /// The same counts by the conductor method.
    pub h_total_conductor: u64,
    pub h_proper_conductor: u64,
}

/// An admissible canonical polynomial seen by the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweptUnit {
    pub poly: UnitPoly,
    pub r: f64,
    pub r_err: f64,
    /// Fundamental norm-one unit of the field and the exponent of this unit.
    pub field: UnitPoly,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub r_max: f64,
    pub precision: Ratio<i64>,
    pub units: Vec<SweptUnit>,
    /// Sorted by `(l, poly, class_index)`.
    pub records: Vec<GeodesicClass>,
    pub orders: BTreeMap<String, OrderSummary>,
}

impl Census {
    pub fn empty(r_max: f64, precision: Ratio<i64>) -> Self {
        Census {
            r_max,
            precision,
            units: Vec::new(),
            records: Vec::new(),
            orders: BTreeMap::new(),
        }
    }

    pub fn primitive(&self) -> impl Iterator<Item = &GeodesicClass> {
        self.records.iter().filter(|r| r.primitive)
    }

    pub fn order(&self, key: &str) -> Option<&OrderSummary> {
        self.orders.get(key)
    }

    /// Restriction to units with `R <= r_max`.
    pub fn truncate(&self, r_max: f64) -> Census {
        Census {
            r_max,
            precision: self.precision,
            units: self.units.iter().filter(|u| u.r <= r_max).copied().collect(),
            records: self.records.iter().filter(|r| r.l <= 3.0 * r_max).cloned().collect(),
            orders: self
                .orders
                .iter()
                .filter(|(_, o)| o.r <= r_max)
                .map(|(k, o)| (k.clone(), o.clone()))
                .collect(),
        }
    }
}

/// Coefficient bound for units with regulator at most `r_max`.
pub fn sweep_box(r_max: f64) -> i64 {
    let v = r_max.exp() + 2.0 * (0.5 * r_max).exp();
    v.round() as i64
}

// Decide R <= r_max with certified brackets, refining when the bracket
// straddles the bound. The value returned is always the one at the base
// precision, so records do not depend on where the sweep stopped.
fn certified_regulator(p: UnitPoly, precision: Ratio<i64>, r_max: f64) -> Result<Option<(f64, f64)>> {
    let coarse = regulator_and_length(p, Ratio::new(1, 1 << 20))?;
    if coarse.r - coarse.r_err > r_max {
        return Ok(None);
    }
    let base = regulator_and_length(p, precision)?;
    let mut rl = base;
    let mut prec = precision;
    for _ in 0..4 {
        if rl.r + rl.r_err <= r_max {
            return Ok(Some((base.r, base.r_err)));
        }
        if rl.r - rl.r_err > r_max {
            return Ok(None);
        }
        match prec.denom().checked_mul(1_000_000) {
            Some(d) => prec = Ratio::new(*prec.numer(), d),
            None => break,
        }
        rl = regulator_and_length(p, prec)?;
    }
    Ok((rl.r <= r_max).then_some((base.r, base.r_err)))
}

fn sweep_units(r_max: f64, precision: Ratio<i64>, shards: usize) -> Result<Vec<(UnitPoly, f64, f64)>> {
    let t_max = sweep_box(r_max);
    let mut grid = Vec::new();
    for t in -t_max..=t_max {
        for s in -t_max..t {
            let p = UnitPoly::new(t, s);
            if p.is_admissible() {
                grid.push(p);
            }
        }
    }
    let shards = shards.max(1);
    let parts: Vec<Vec<(UnitPoly, f64, f64)>> = (0..shards)
        .into_par_iter()
        .map(|k| {
            grid.iter()
                .skip(k)
                .step_by(shards)
                .filter_map(|&p| match certified_regulator(p, precision, r_max) {
                    Ok(Some((r, e))) => Some(Ok((p, r, e))),
                    Ok(None) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut all: Vec<(UnitPoly, f64, f64)> = parts.into_iter().flatten().collect();
    all.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(all)
}

// Groups units by field: a unit not yet assigned when visited in order of
// regulator is the field's fundamental norm-one unit, and every unit of the
// field is a power of it.
fn group_fields(units: &[(UnitPoly, f64, f64)], r_max: f64) -> Vec<SweptUnit> {
    let index: HashMap<UnitPoly, usize> = units.iter().enumerate().map(|(i, u)| (u.0, i)).collect();
    let mut assigned: Vec<Option<(UnitPoly, u32)>> = vec![None; units.len()];
    for i in 0..units.len() {
        if assigned[i].is_some() {
            continue;
        }
        let (eps, r, err) = units[i];
        let mut k = 1u32;
        while (k as f64) * (r - err) <= r_max {
            let q = newton_power(eps, k);
            match index.get(&q) {
                Some(&j) => {
                    assert!(
                        assigned[j].is_none(),
                        "unit {q} reached from two field generators"
                    );
                    assigned[j] = Some((eps, k));
                }
                None => assert!(
                    (k as f64) * (r + err) > r_max - 1e-9,
                    "power {q} = {eps}^{k} missing from the sweep"
                ),
            }
            k += 1;
        }
    }
    units
        .iter()
        .zip(assigned)
        .map(|(&(poly, r, r_err), a)| {
            let (field, exponent) = a.expect("every unit is assigned");
            SweptUnit {
                poly,
                r,
                r_err,
                field,
                exponent,
            }
        })
        .collect()
}

struct FieldResult {
    records: Vec<GeodesicClass>,
    orders: Vec<OrderSummary>,
}

fn process_field(eps_poly: UnitPoly, r_eps: f64, members: &[SweptUnit]) -> Result<FieldResult> {
    let z = order_from_poly(eps_poly)?;
    let field: Arc<CubicField> = z.field.clone();
    let eps = Elem::gen();
    let top = maximal_over(&z)?.with_unit(eps);
    let max_k = members.iter().map(|m| m.exponent).max().unwrap_or(1);
    let lattice_of = |k: u32| {
        let th = field.pow(&eps, k);
        let th2 = field.mul(&th, &th);
        crate::orders::lattice::span(&[Elem::one(), th, th2]).expect("a unit generates the field")
    };
    // All orders between some Z[eps^k] and O_F.
    let mut orders: BTreeMap<crate::orders::Lattice, CubicOrder> = BTreeMap::new();
    let mut monogenic: BTreeMap<u32, CubicOrder> = BTreeMap::new();
    for m in members {
        let zk = CubicOrder::from_lattice(field.clone(), lattice_of(m.exponent), field.pow(&eps, m.exponent));
        for o in orders_between(&zk, &top)? {
            orders.entry(o.basis.clone()).or_insert(o);
        }
        monogenic.insert(m.exponent, zk);
    }
    // Attach each order's fundamental norm-one unit.
    let orders: BTreeMap<crate::orders::Lattice, (CubicOrder, u32)> = orders
        .into_iter()
        .map(|(k, o)| {
            let m = unit_exponent(&o, &eps, max_k).expect("some census power lies in every order");
            let o = o.with_unit(field.pow(&eps, m));
            (k, (o, m))
        })
        .collect();
    let top_h = module_classes(&orders[&top.basis].0)?.len() as u64;
    let class_lists: Vec<(crate::orders::Lattice, Vec<LatticeClass>)> = orders
        .par_iter()
        .map(|(k, (o, _))| module_classes(o).map(|c| (k.clone(), c)))
        .collect::<Result<Vec<_>>>()?;
    let class_lists: BTreeMap<_, _> = class_lists.into_iter().collect();
    let mut summaries = Vec::new();
    for (k, (o, m)) in &orders {
        let (ht, hp) = counts(o, &class_lists[k]);
        let (hb, hpb) = class_number_via_conductor(o, &top, top_h)?;
        summaries.push(OrderSummary {
            key: o.key(),
            disc: o.disc,
            index: o.index(),
            unit_exponent: *m,
            r: *m as f64 * r_eps,
            h_total: ht,
            h_proper: hp,
            h_total_conductor: hb,
            h_proper_conductor: hpb,
        });
    }
    let mut records = Vec::new();
    for mem in members {
        let zk = &monogenic[&mem.exponent];
        for (i, cl) in class_lists[&zk.basis].iter().enumerate() {
            let (mo, m) = &orders[&cl.multiplier.basis];
            if mem.exponent % m != 0 {
                return Err(Error::Domain(format!(
                    "unit exponent {m} of {} does not divide {}",
                    mo.key(),
                    mem.exponent
                )));
            }
            let mu = mem.exponent / m;
            let root = newton_power(eps_poly, *m);
            assert_eq!(newton_power(root, mu), mem.poly, "record is not a power of its root");
            records.push(GeodesicClass {
                poly: mem.poly,
                order: mo.key(),
                class_index: i,
                l: 3.0 * mem.r,
                r: *m as f64 * r_eps,
                primitive: mu == 1,
                mu,
                root_poly: root,
            });
        }
    }
    Ok(FieldResult {
        records,
        orders: summaries,
    })
}

pub fn run_sweep(r_max: f64, precision: Ratio<i64>) -> Result<Census> {
    run_sweep_sharded(r_max, precision, 1)
}

/// Sweep with the coefficient grid split into `shards` interleaved parts;
/// the result does not depend on the shard count.
pub fn run_sweep_sharded(r_max: f64, precision: Ratio<i64>, shards: usize) -> Result<Census> {
    if !(r_max > 0.0) || !r_max.is_finite() {
        return Err(Error::Domain(format!("r_max must be positive, got {r_max}")));
    }
    let raw = sweep_units(r_max, precision, shards)?;
    let units = group_fields(&raw, r_max);
    let mut by_field: BTreeMap<UnitPoly, Vec<SweptUnit>> = BTreeMap::new();
    for u in &units {
        by_field.entry(u.field).or_default().push(*u);
    }
    let results: Vec<FieldResult> = by_field
        .par_iter()
        .map(|(eps, members)| {
            let r_eps = members.iter().find(|m| m.exponent == 1).expect("generator present").r;
            process_field(*eps, r_eps, members)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut census = Census::empty(r_max, precision);
    census.units = units;
    for fr in results {
        census.records.extend(fr.records);
        for o in fr.orders {
            census.orders.insert(o.key.clone(), o);
        }
    }
    census
        .records
        .sort_by(|a, b| a.l.total_cmp(&b.l).then(a.poly.cmp(&b.poly)).then(a.class_index.cmp(&b.class_index)));
    Ok(census)
}
