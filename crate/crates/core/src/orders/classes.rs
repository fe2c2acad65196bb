//! Module classes of an order: direct enumeration of bounded representatives
//! with isomorphism deduplication, and an independent count through the
//! conductor.

use super::field::{CubicField, Elem};
use super::lattice::{self, Lattice};
use super::order::{conductor, extend_by, invariant_subspaces, stable_lattices_between, CubicOrder};
use super::search::{bounded_norm_elements, minimal_elements, unit_window};
use crate::Result;
use num_rational::Ratio;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// `8 / (9 pi)`: Minkowski's constant for complex cubic fields.
pub const MINKOWSKI: f64 = 8.0 / (9.0 * std::f64::consts::PI);

/// A lattice in the field that is a module over `owner`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OLattice {
    pub basis: Lattice,
    pub owner: CubicOrder,
}

impl OLattice {
    pub fn new(basis: Lattice, owner: CubicOrder) -> Self {
        debug_assert!(lattice::is_stable(&owner.field, &owner.basis, &basis));
        OLattice { basis, owner }
    }

    pub fn scaled(&self, x: &Elem) -> OLattice {
        OLattice {
            basis: lattice::scale(&self.owner.field, &self.basis, x),
            owner: self.owner.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LatticeClass {
    pub representative: OLattice,
    pub multiplier: CubicOrder,
    /// Least `|N(x)| / covol(M)` over nonzero `x` in the representative.
    pub nu_min: Ratio<i128>,
}

/// Upper rational approximation of `MINKOWSKI * sqrt(|disc f|) * covol(m)`.
fn minkowski_norm_bound(f: &CubicField, m: &Lattice) -> Ratio<i128> {
    let c = MINKOWSKI * (f.disc.abs() as f64).sqrt() * (1.0 + 1e-12);
    let scale = 1_000_000_000i128;
    Ratio::new((c * scale as f64).ceil() as i128, scale) * m.det()
}

/// Largest index `[M : O]` a reduced class representative can have.
pub fn minkowski_index_bound(o: &CubicOrder) -> u64 {
    (MINKOWSKI * (o.disc.abs() as f64).sqrt() * (1.0 + 1e-12)).floor() as u64
}

pub fn multiplier_ring(m: &OLattice) -> CubicOrder {
    let f = m.owner.field.clone();
    let l = lattice::multiplier(&f, &m.basis);
    CubicOrder::from_lattice(f, l, m.owner.unit)
}

/// A `λ` with `λ m = n`, found among elements of norm `covol(n)/covol(m)` in
/// the colon lattice `(n : m)`.
pub fn isomorphism_witness(m: &OLattice, n: &OLattice) -> Option<Elem> {
    let f = &m.owner.field;
    let em = lattice::multiplier(f, &m.basis);
    if em != lattice::multiplier(f, &n.basis) {
        return None;
    }
    let target = n.basis.det() / m.basis.det();
    let col = lattice::colon(f, &n.basis, &m.basis);
    let unit = m.owner.unit;
    for x in bounded_norm_elements(f, &col, target, unit_window(f, &unit)) {
        if x.abs_norm == target && lattice::scale(f, &m.basis, &x.elem) == n.basis {
            return Some(x.elem);
        }
    }
    None
}

pub fn is_isomorphic(m: &OLattice, n: &OLattice) -> bool {
    isomorphism_witness(m, n).is_some()
}

/// Every class has a representative `M ⊇ O` with `[M : O]` at most the
/// Minkowski bound and `M ⊉ (1/p) O` for every prime `p`: scale by the inverse
/// of a Minkowski-short element, then divide out any full `(1/p) O`.
/// Returns all such `M`, sorted.
pub fn reduced_superlattices(o: &CubicOrder) -> Result<Vec<Lattice>> {
    let f = &o.field;
    let bound = minkowski_index_bound(o);
    let primes: Vec<u64> = (2..=bound).filter(|&n| crate::exact::is_prime_u64(n)).collect();
    let o_div = |p: u64| lattice::scale_q(&o.basis, Ratio::new(1, p as i128));
    let mut seen: BTreeSet<Lattice> = BTreeSet::new();
    let mut queue: VecDeque<(Lattice, u64)> = VecDeque::new();
    seen.insert(o.basis.clone());
    queue.push_back((o.basis.clone(), 1));
    while let Some((x, idx)) = queue.pop_front() {
        for &p in primes.iter().take_while(|&&p| idx * p <= bound) {
            let od = o_div(p);
            for w in invariant_subspaces(f, &o.basis, &x, p) {
                let step = p.pow(w.len() as u32);
                if idx * step > bound {
                    continue;
                }
                let y = extend_by(&x, &w, p);
                if seen.contains(&y) || y.contains_lattice(&od) {
                    continue;
                }
                seen.insert(y.clone());
                queue.push_back((y, idx * step));
            }
        }
    }
    Ok(seen.into_iter().collect())
}

struct Candidate {
    lat: Lattice,
    mult: Lattice,
    nu: Ratio<i128>,
    mins: Vec<Elem>,
}

fn candidate(o: &CubicOrder, lat: Lattice) -> Candidate {
    let f = &o.field;
    let mult = lattice::multiplier(f, &lat);
    let one = Ratio::from_integer(1);
    let bound = minkowski_norm_bound(f, &lat).min(one);
    let found = minimal_elements(f, &lat, bound, &o.unit);
    assert!(!found.is_empty(), "Minkowski search found no element in {lat}");
    let nu = found[0].abs_norm / lat.det();
    Candidate {
        lat,
        mult,
        nu,
        mins: found.into_iter().map(|x| x.elem).collect(),
    }
}

// If a ≅ b then λ x is a minimizer of b for any minimizer x of a; the search
// window lists every minimizer of b up to ±unit, which fixes b.
fn iso_by_minimizers(f: &CubicField, a: &Candidate, b: &Candidate) -> Option<Elem> {
    let x = &a.mins[0];
    let xi = f.inv(x);
    b.mins
        .iter()
        .map(|y| f.mul(y, &xi))
        .find(|l| lattice::scale(f, &a.lat, l) == b.lat)
}

/// All module classes of `o`, sorted by representative.
pub fn module_classes(o: &CubicOrder) -> Result<Vec<LatticeClass>> {
    let f = o.field.clone();
    let cands: Vec<Candidate> = reduced_superlattices(o)?
        .into_par_iter()
        .map(|l| candidate(o, l))
        .collect();
    let mut reps: Vec<usize> = Vec::new();
    let mut buckets: BTreeMap<(Lattice, Ratio<i128>), Vec<usize>> = BTreeMap::new();
    for (i, c) in cands.iter().enumerate() {
        let bucket = buckets.entry((c.mult.clone(), c.nu)).or_default();
        if bucket.iter().any(|&r| iso_by_minimizers(&f, &cands[r], c).is_some()) {
            continue;
        }
        bucket.push(i);
        reps.push(i);
    }
    Ok(reps
        .into_iter()
        .map(|i| {
            let c = &cands[i];
            LatticeClass {
                representative: OLattice {
                    basis: c.lat.clone(),
                    owner: o.clone(),
                },
                multiplier: CubicOrder::from_lattice(f.clone(), c.mult.clone(), o.unit),
                nu_min: c.nu,
            }
        })
        .collect())
}

/// `(h_total, h_proper)` by direct enumeration.
pub fn class_number(o: &CubicOrder) -> Result<(u64, u64)> {
    let cl = module_classes(o)?;
    Ok(counts(o, &cl))
}

pub fn counts(o: &CubicOrder, classes: &[LatticeClass]) -> (u64, u64) {
    let total = classes.len() as u64;
    let proper = classes.iter().filter(|c| c.multiplier.basis == o.basis).count() as u64;
    (total, proper)
}

/// `(h_total, h_proper)` from the class number of the maximal order: the
/// classes of `o` are `h(O_F)` copies of the orbits of `O_F^×` on the
/// `o`-stable lattices `M` between the conductor and `O_F` with `O_F M = O_F`.
///
/// `top.unit` must generate `O_F^×` modulo `±1`.
pub fn class_number_via_conductor(o: &CubicOrder, top: &CubicOrder, h_top: u64) -> Result<(u64, u64)> {
    let f = &o.field;
    if o.basis == top.basis {
        return Ok((h_top, h_top));
    }
    let cond = conductor(o, top);
    let all = stable_lattices_between(f, &o.basis, &cond, &top.basis)?;
    let s: Vec<Lattice> = all
        .into_iter()
        .filter(|m| lattice::product(f, &top.basis, m) == top.basis)
        .collect();
    let pos: BTreeMap<&Lattice, usize> = s.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..s.len()).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut c = i;
        while p[c] != r {
            let n = p[c];
            p[c] = r;
            c = n;
        }
        r
    }
    for (i, m) in s.iter().enumerate() {
        let um = lattice::scale(f, m, &top.unit);
        let j = *pos.get(&um).expect("unit action preserves the lattice set");
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut roots = BTreeSet::new();
    let mut proper = 0u64;
    for i in 0..s.len() {
        let r = find(&mut parent, i);
        if roots.insert(r) && lattice::multiplier(f, &s[r]) == o.basis {
            proper += 1;
        }
    }
    Ok((h_top * roots.len() as u64, h_top * proper))
}

/// Least `k >= 1` with `u^k ∈ o`, searching `k <= limit`.
pub fn unit_exponent(o: &CubicOrder, u: &Elem, limit: u32) -> Option<u32> {
    let mut x = Elem::one();
    for k in 1..=limit {
        x = o.field.mul(&x, u);
        if o.contains(&x) {
            return Some(k);
        }
    }
    None
}

/// Float value of the regulator of a unit, `|log|sigma1(u)||`.
pub fn unit_regulator(f: &CubicField, u: &Elem) -> f64 {
    f.sigma1(u).abs().ln().abs()
}
