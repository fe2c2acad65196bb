//! Full-rank lattices in a cubic field, stored as Hermite normal forms over
//! the power basis.

use super::field::{adj3, det3, mat_mul, CubicField, Elem};
use crate::exact::HnfBasis;
use crate::Result;
use num_integer::Integer;
use num_rational::Ratio;

pub type Lattice = HnfBasis;

pub fn basis_elems(l: &Lattice) -> [Elem; 3] {
    [
        Elem::new(l.h[0], l.den),
        Elem::new(l.h[1], l.den),
        Elem::new(l.h[2], l.den),
    ]
}

/// Lattice spanned by field elements.
pub fn span(gens: &[Elem]) -> Result<Lattice> {
    let den = gens.iter().fold(1i128, |d, e| d.lcm(&e.den));
    let rows: Vec<[i128; 3]> = gens
        .iter()
        .map(|e| {
            let k = den / e.den;
            [e.num[0] * k, e.num[1] * k, e.num[2] * k]
        })
        .collect();
    HnfBasis::from_scaled(&rows, den)
}

pub fn contains(l: &Lattice, e: &Elem) -> bool {
    l.contains(&e.num, e.den)
}

pub fn sum(a: &Lattice, b: &Lattice) -> Lattice {
    let mut g = basis_elems(a).to_vec();
    g.extend(basis_elems(b));
    span(&g).expect("sum of full lattices is full")
}

pub fn scale(f: &CubicField, a: &Lattice, x: &Elem) -> Lattice {
    let g: Vec<Elem> = basis_elems(a).iter().map(|b| f.mul(b, x)).collect();
    span(&g).expect("nonzero multiple of a full lattice is full")
}

pub fn scale_q(a: &Lattice, q: Ratio<i128>) -> Lattice {
    let g: Vec<Elem> = basis_elems(a).iter().map(|b| b.scale(q)).collect();
    span(&g).expect("nonzero multiple of a full lattice is full")
}

pub fn product(f: &CubicField, a: &Lattice, b: &Lattice) -> Lattice {
    let (ea, eb) = (basis_elems(a), basis_elems(b));
    let mut g = Vec::with_capacity(9);
    for x in &ea {
        for y in &eb {
            g.push(f.mul(x, y));
        }
    }
    span(&g).expect("product of full lattices is full")
}

/// `[a : b]` for `b` a sublattice of `a`, as a ratio of covolumes.
pub fn index(a: &Lattice, b: &Lattice) -> Ratio<i128> {
    b.det() / a.det()
}

/// Whether `x * a` is contained in `a` for every `x` in `ring`.
pub fn is_stable(f: &CubicField, ring: &Lattice, a: &Lattice) -> bool {
    let ea = basis_elems(a);
    basis_elems(ring)
        .iter()
        .all(|r| ea.iter().all(|b| contains(a, &f.mul(r, b))))
}

/// Colon lattice `(n : m) = { x : x m ⊆ n }`.
///
/// With `n = H / d` in row form, `x m_j ∈ n` iff `x * Mul(m_j) * d * H^{-1}`
/// is integral, so the colon lattice is the dual of the lattice spanned by
/// the columns of those matrices.
pub fn colon(f: &CubicField, n: &Lattice, m: &Lattice) -> Lattice {
    let hn = n.h;
    let det_h = det3(&hn);
    let adj_h = adj3(&hn);
    let mut cols: Vec<[i128; 3]> = Vec::with_capacity(9);
    let mut dens: Vec<i128> = Vec::with_capacity(9);
    for mj in basis_elems(m) {
        let mm = f.mul_matrix(&mj);
        let t = mat_mul(&mm.m, &adj_h);
        // T = t * n.den / (mm.den * det_h)
        let (num_scale, den) = (n.den, mm.den * det_h);
        for c in 0..3 {
            cols.push([t[0][c] * num_scale, t[1][c] * num_scale, t[2][c] * num_scale]);
            dens.push(den);
        }
    }
    let den = dens.iter().fold(1i128, |a, d| a.lcm(d)).abs();
    let rows: Vec<[i128; 3]> = cols
        .iter()
        .zip(&dens)
        .map(|(c, d)| {
            let k = den / d;
            [c[0] * k, c[1] * k, c[2] * k]
        })
        .collect();
    let s = HnfBasis::from_scaled(&rows, den).expect("column lattice is full rank");
    dual(&s)
}

/// Dual lattice `{ x : x . y ∈ Z for y ∈ s }` under the standard pairing.
pub fn dual(s: &Lattice) -> Lattice {
    let adj = adj3(&s.h);
    let d = det3(&s.h);
    // (H/den)^{-T} = den * adj(H)^T / det(H)
    let mut rows = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            rows[i][j] = adj[j][i] * s.den;
        }
    }
    HnfBasis::from_scaled(&rows, d).expect("dual of a full lattice is full")
}

/// Ring of multipliers `{ x : x a ⊆ a }`.
pub fn multiplier(f: &CubicField, a: &Lattice) -> Lattice {
    colon(f, a, a)
}

/// Whether the lattice contains 1 and is closed under multiplication.
pub fn is_ring(f: &CubicField, a: &Lattice) -> bool {
    contains(a, &Elem::one()) && is_stable(f, a, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::UnitPoly;

    fn field(t: i64, s: i64) -> CubicField {
        CubicField::new(UnitPoly::new(t, s)).unwrap()
    }

    #[test]
    fn colon_of_identity_lattice() {
        let f = field(0, -1);
        let z = HnfBasis::identity();
        assert_eq!(multiplier(&f, &z), z);
        let two = scale_q(&z, Ratio::from_integer(2));
        assert_eq!(colon(&f, &two, &z), two);
        assert_eq!(colon(&f, &z, &two), scale_q(&z, Ratio::new(1, 2)));
    }

    #[test]
    fn colon_brute_force() {
        // Compare (n : m) against a direct membership test on a grid.
        let f = field(5, 2);
        let x = Elem::gen();
        let m = span(&[Elem::int(3), f.mul(&x, &Elem::int(1)).add(&Elem::int(1)), f.mul(&x, &x)]).unwrap();
        let n = span(&[Elem::int(1), x, Elem::new([0, 0, 1], 3)]).unwrap();
        let c = colon(&f, &n, &m);
        for a in -6..=6 {
            for b in -6..=6 {
                for d in -6..=6 {
                    let e = Elem::new([a, b, d], 6);
                    let inside = basis_elems(&m).iter().all(|mj| contains(&n, &f.mul(&e, mj)));
                    assert_eq!(inside, contains(&c, &e), "{e}");
                }
            }
        }
    }
}
