use super::field::{CubicField, Elem};
use super::lattice::{self, basis_elems, contains, Lattice};
use crate::exact::modp::{self, Mat3};
use crate::exact::{factor_integer, HnfBasis, UnitPoly};
use crate::Result;
use num_rational::Ratio;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

/// An order in `Q[X]/(f)`, with a known unit of infinite order.
#[derive(Debug, Clone)]
pub struct CubicOrder {
    pub field: Arc<CubicField>,
    pub basis: Lattice,
    /// A unit `u` with `u O = O` and `|u| != 1`; the field generator for
    /// monogenic orders, the fundamental norm-one unit for census orders.
    pub unit: Elem,
    pub disc: i128,
}

impl PartialEq for CubicOrder {
    fn eq(&self, other: &Self) -> bool {
        self.field.poly == other.field.poly && self.basis == other.basis
    }
}

impl Eq for CubicOrder {}

impl fmt::Display for CubicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.field.poly, self.basis)
    }
}

impl CubicOrder {
    /// Wraps a lattice already known to be a ring.
    pub fn from_lattice(field: Arc<CubicField>, basis: Lattice, unit: Elem) -> Self {
        let det = basis.det();
        let d = Ratio::from_integer(field.disc) * det * det;
        assert!(d.is_integer(), "order discriminant must be integral");
        debug_assert!(lattice::is_ring(&field, &basis));
        CubicOrder {
            disc: d.to_integer(),
            field,
            basis,
            unit,
        }
    }

    pub fn poly(&self) -> UnitPoly {
        self.field.poly
    }

    /// Structural key `t,s|d|h11,h12,h13;h22,h23;h33`.
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// `[O : Z[x]]` as a ratio of covolumes (an integer when `O ⊇ Z[x]`).
    pub fn index(&self) -> Ratio<i128> {
        Ratio::from_integer(1) / self.basis.det()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        contains(&self.basis, e)
    }

    pub fn contains_order(&self, o: &CubicOrder) -> bool {
        self.basis.contains_lattice(&o.basis)
    }

    pub fn is_valid(&self) -> bool {
        lattice::is_ring(&self.field, &self.basis) && self.disc < 0
    }

    pub fn with_unit(&self, unit: Elem) -> Self {
        debug_assert!(self.contains(&unit));
        CubicOrder { unit, ..self.clone() }
    }

    /// Multiplication table `b_i b_j = sum_k c[i][j][k] b_k`.
    pub fn structure_constants(&self) -> [[[i128; 3]; 3]; 3] {
        let b = basis_elems(&self.basis);
        let mut c = [[[0i128; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let p = self.field.mul(&b[i], &b[j]);
                c[i][j] = self.basis.coords(&p.num, p.den).expect("order closed under products");
            }
        }
        c
    }
}

/// The monogenic order `Z[x]` of an admissible polynomial.
pub fn order_from_poly(p: UnitPoly) -> Result<CubicOrder> {
    p.require_admissible()?;
    let field = Arc::new(CubicField::new(p)?);
    Ok(CubicOrder::from_lattice(field, HnfBasis::identity(), Elem::gen()))
}

/// Matrices of the action of `ring`'s basis on `x`'s basis: row `i` of
/// matrix `j` holds the coordinates of `x_i * r_j`.
pub fn action_matrices(f: &CubicField, ring: &Lattice, x: &Lattice) -> [[[i128; 3]; 3]; 3] {
    let xb = basis_elems(x);
    let rb = basis_elems(ring);
    let mut out = [[[0i128; 3]; 3]; 3];
    for j in 0..3 {
        for i in 0..3 {
            let p = f.mul(&xb[i], &rb[j]);
            out[j][i] = x.coords(&p.num, p.den).expect("lattice is stable under the ring");
        }
    }
    out
}

/// Nonzero invariant subspaces of `x / p x` under the action of `ring`, as
/// lists of basis rows (dimension 1, 2 or 3).
pub fn invariant_subspaces(f: &CubicField, ring: &Lattice, x: &Lattice, p: u64) -> Vec<Vec<modp::Vec3>> {
    let mats: Vec<Mat3> = action_matrices(f, ring, x)
        .iter()
        .map(|m| modp::reduce_mat(m, p))
        .collect();
    let mut out: Vec<Vec<modp::Vec3>> = modp::invariant_lines(&mats, p).into_iter().map(|v| vec![v]).collect();
    out.extend(modp::invariant_planes(&mats, p).into_iter().map(|w| w.to_vec()));
    out.push(vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    out
}

/// `x + (1/p) * lift(w)` for a subspace `w` of `x / p x`.
pub fn extend_by(x: &Lattice, w: &[modp::Vec3], p: u64) -> Lattice {
    let xb = basis_elems(x);
    let mut gens = xb.to_vec();
    for v in w {
        let mut e = Elem::int(0);
        for k in 0..3 {
            if v[k] != 0 {
                e = e.add(&xb[k].scale(Ratio::from_integer(v[k] as i128)));
            }
        }
        gens.push(e.scale(Ratio::new(1, p as i128)));
    }
    lattice::span(&gens).expect("superlattice of a full lattice")
}

/// Primes dividing a positive rational index (numerator and denominator).
pub fn primes_of_index(q: Ratio<i128>) -> Result<Vec<u64>> {
    let mut ps = BTreeSet::new();
    for n in [*q.numer(), *q.denom()] {
        if n.abs() > 1 {
            ps.extend(factor_integer(n)?.primes());
        }
    }
    Ok(ps.into_iter().collect())
}

/// All `ring`-stable lattices `x` with `lower ⊆ x ⊆ upper`, sorted canonically.
pub fn stable_lattices_between(f: &CubicField, ring: &Lattice, lower: &Lattice, upper: &Lattice) -> Result<Vec<Lattice>> {
    let primes = primes_of_index(lattice::index(upper, lower))?;
    let mut seen: BTreeSet<Lattice> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lower.clone());
    queue.push_back(lower.clone());
    while let Some(x) = queue.pop_front() {
        for &p in &primes {
            if lattice::index(upper, &x).numer() % p as i128 != 0 {
                continue;
            }
            for w in invariant_subspaces(f, ring, &x, p) {
                let y = extend_by(&x, &w, p);
                if upper.contains_lattice(&y) && !seen.contains(&y) {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn radical_ideal(o: &CubicOrder, p: u64) -> Lattice {
    let c = o.structure_constants();
    let cm: Vec<Vec<Vec<u64>>> = c
        .iter()
        .map(|r| r.iter().map(|v| v.iter().map(|x| modp::reduce(*x, p)).collect()).collect())
        .collect();
    let mul = |a: &[u64; 3], b: &[u64; 3]| {
        let mut r = [0u64; 3];
        for i in 0..3 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..3 {
                if b[j] == 0 {
                    continue;
                }
                let s = a[i] * b[j] % p;
                for k in 0..3 {
                    r[k] = (r[k] + s * cm[i][j][k]) % p;
                }
            }
        }
        r
    };
    let pow = |a: &[u64; 3], mut e: u64| {
        let one = o.basis.coords(&[1, 0, 0], 1).expect("order contains 1");
        let mut r = [modp::reduce(one[0], p), modp::reduce(one[1], p), modp::reduce(one[2], p)];
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(&r, &b);
            }
            b = mul(&b, &b);
            e >>= 1;
        }
        r
    };
    // x -> x^(p^j) with p^j >= 3 is F_p-linear and kills exactly the radical.
    let mut q = p;
    while q < 3 {
        q *= p;
    }
    let mut frob = [[0u64; 3]; 3];
    for i in 0..3 {
        let mut e = [0u64; 3];
        e[i] = 1;
        let mut v = e;
        let mut k = 1;
        while k < q {
            v = pow(&v, p);
            k *= p;
        }
        frob[i] = v;
    }
    let ker = modp::left_kernel(&frob, p);
    let ob = basis_elems(&o.basis);
    let mut gens: Vec<Elem> = ob.iter().map(|b| b.scale(Ratio::from_integer(p as i128))).collect();
    for v in ker {
        let mut e = Elem::int(0);
        for k in 0..3 {
            e = e.add(&ob[k].scale(Ratio::from_integer(v[k] as i128)));
        }
        gens.push(e);
    }
    lattice::span(&gens).expect("radical contains p O")
}

/// Dedekind's criterion for `Z[x]` at `p`, assuming `p^2 | disc`.
fn dedekind_maximal_at(poly: UnitPoly, p: u64) -> bool {
    let (t, s) = (poly.t as i128, poly.s as i128);
    let pi = p as i128;
    let f = |x: i128| ((x - t) * x + s) * x - 1;
    let roots: Vec<i128> = (0..pi).filter(|&a| f(a).rem_euclid(pi) == 0).collect();
    // Repeated factor is linear: find a with f(a) = f'(a) = 0 mod p.
    let df = |x: i128| (3 * x - 2 * t) * x + s;
    let Some(&a) = roots.iter().find(|&&a| df(a).rem_euclid(pi) == 0) else {
        return true;
    };
    // g = product of distinct linear factors (radical of f mod p), h = f / g.
    let others: Vec<i128> = roots.iter().copied().filter(|&b| b != a).collect();
    let mul = |u: &[i128], v: &[i128]| {
        let mut r = vec![0i128; u.len() + v.len() - 1];
        for (i, x) in u.iter().enumerate() {
            for (j, y) in v.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        r
    };
    let (g, h) = match others.first() {
        Some(&b) => (mul(&[-a, 1], &[-b, 1]), vec![-a, 1]),
        None => (vec![-a, 1], mul(&[-a, 1], &[-a, 1])),
    };
    let gh = mul(&g, &h);
    let fc = [-1, s, -t, 1];
    let big_f: Vec<i128> = (0..4).map(|i| (fc[i] - gh[i]) / pi).collect();
    debug_assert!((0..4).all(|i| (fc[i] - gh[i]) % pi == 0));
    let val = big_f.iter().rev().fold(0i128, |acc, c| (acc * a + c).rem_euclid(pi));
    val != 0
}

/// The maximal order, by Dedekind's criterion and radical enlargement.
pub fn maximal_order(p: UnitPoly) -> Result<CubicOrder> {
    let z = order_from_poly(p)?;
    maximal_over(&z)
}

/// The maximal order containing `o`.
pub fn maximal_over(o: &CubicOrder) -> Result<CubicOrder> {
    let fac = factor_integer(o.disc)?;
    let mut cur = o.clone();
    let monogenic = o.basis == HnfBasis::identity();
    for &(p, e) in &fac.factors {
        if e < 2 {
            continue;
        }
        if monogenic && dedekind_maximal_at(o.poly(), p) {
            continue;
        }
        loop {
            let rad = radical_ideal(&cur, p);
            let next = lattice::multiplier(&cur.field, &rad);
            if next == cur.basis {
                break;
            }
            cur = CubicOrder::from_lattice(cur.field.clone(), next, cur.unit);
        }
    }
    Ok(cur)
}

/// All orders between `o` and `top` (inclusive), sorted by index then key.
pub fn orders_between(o: &CubicOrder, top: &CubicOrder) -> Result<Vec<CubicOrder>> {
    let f = &o.field;
    let mut out: Vec<CubicOrder> = stable_lattices_between(f, &o.basis, &o.basis, &top.basis)?
        .into_iter()
        .filter(|l| lattice::is_ring(f, l))
        .map(|l| CubicOrder::from_lattice(f.clone(), l, o.unit))
        .collect();
    out.sort_by(|a, b| a.index().cmp(&b.index()).then(a.basis.cmp(&b.basis)));
    Ok(out)
}

/// All orders `O` with `Z[x] ⊆ O ⊆ O_F`.
pub fn overorders(p: UnitPoly) -> Result<Vec<CubicOrder>> {
    let z = order_from_poly(p)?;
    let top = maximal_over(&z)?;
    orders_between(&z, &top)
}

/// Conductor `{ x : x O_F ⊆ O }`.
pub fn conductor(o: &CubicOrder, top: &CubicOrder) -> Lattice {
    lattice::colon(&o.field, &o.basis, &top.basis)
}
