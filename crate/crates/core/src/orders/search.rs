//! Enumeration of lattice elements of bounded norm inside a fundamental
//! window for a unit, by LLL reduction and Fincke-Pohst enumeration on the
//! Minkowski embedding.

use super::field::{CubicField, Elem};
use super::lattice::{basis_elems, Lattice};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Found {
    pub elem: Elem,
    pub abs_norm: Ratio<i128>,
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

// LLL with delta = 0.99 on three vectors; returns the reduced vectors and
// the integer transform (rows of `u` express reduced vectors in the input).
fn lll(mut b: [[f64; 3]; 3]) -> ([[f64; 3]; 3], [[i64; 3]; 3]) {
    let mut u = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    let gso = |b: &[[f64; 3]; 3]| {
        let mut bs = *b;
        let mut mu = [[0.0f64; 3]; 3];
        for i in 0..3 {
            for j in 0..i {
                mu[i][j] = dot(&b[i], &bs[j]) / dot(&bs[j], &bs[j]);
                for k in 0..3 {
                    bs[i][k] -= mu[i][j] * bs[j][k];
                }
            }
        }
        (bs, mu)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < 3 {
        guard += 1;
        assert!(guard < 10_000, "LLL failed to converge");
        for j in (0..k).rev() {
            let (_, mu) = gso(&b);
            let q = mu[k][j].round();
            if q != 0.0 {
                for c in 0..3 {
                    b[k][c] -= q * b[j][c];
                    u[k][c] -= q as i64 * u[j][c];
                }
            }
        }
        let (bs, mu) = gso(&b);
        let lhs = dot(&bs[k], &bs[k]);
        let rhs = (0.99 - mu[k][k - 1] * mu[k][k - 1]) * dot(&bs[k - 1], &bs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = if k > 1 { k - 1 } else { 1 };
        }
    }
    (b, u)
}

/// All `x` in `lat` with `sigma1(x) > 0`, `|N(x)| <= bound` and
/// `|log|sigma1(x)| - log|sigma2(x)|| <= window`.
pub fn bounded_norm_elements(f: &CubicField, lat: &Lattice, bound: Ratio<i128>, window: f64) -> Vec<Found> {
    let k = bound.to_f64().expect("finite bound") * (1.0 + 1e-9);
    let a = (k * (2.0 * window).exp()).cbrt();
    let c = (k * window.exp()).cbrt();
    let basis = basis_elems(lat);
    let mut v = [[0.0f64; 3]; 3];
    for (i, b) in basis.iter().enumerate() {
        let s2 = f.sigma2(b);
        v[i] = [f.sigma1(b) / a, s2.re / c, s2.im / c];
    }
    let (w, u) = lll(v);
    let mut g = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = dot(&w[i], &w[j]);
        }
    }
    // Cholesky-style decomposition: Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2.
    let mut q = g;
    for i in 0..3 {
        for j in (i + 1)..3 {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for kk in (i + 1)..3 {
            for l in kk..3 {
                q[kk][l] -= q[kk][i] * q[i][l];
            }
        }
    }
    let r2 = 2.0 * (1.0 + 1e-7);
    let span = |rem: f64, qii: f64, center: f64| -> (i64, i64) {
        let h = (rem.max(0.0) / qii).sqrt() + 1e-9;
        ((center - h).ceil() as i64, (center + h).floor() as i64)
    };
    let log_k = k.ln();
    let mut out = Vec::new();
    let (lo2, hi2) = span(r2, q[2][2], 0.0);
    for x2 in lo2..=hi2 {
        let rem1 = r2 - q[2][2] * (x2 as f64).powi(2);
        let c1 = -q[1][2] * x2 as f64;
        let (lo1, hi1) = span(rem1, q[1][1], c1);
        for x1 in lo1..=hi1 {
            let d1 = x1 as f64 + q[1][2] * x2 as f64;
            let rem0 = rem1 - q[1][1] * d1 * d1;
            let c0 = -(q[0][1] * x1 as f64 + q[0][2] * x2 as f64);
            let (lo0, hi0) = span(rem0, q[0][0], c0);
            for x0 in lo0..=hi0 {
                if x0 == 0 && x1 == 0 && x2 == 0 {
                    continue;
                }
                let coef = [x0, x1, x2];
                let mut cc = [0i128; 3];
                for r in 0..3 {
                    for s in 0..3 {
                        cc[s] += coef[r] as i128 * u[r][s] as i128;
                    }
                }
                let num = [
                    cc[0] * basis_num(lat, 0, 0) + cc[1] * basis_num(lat, 1, 0) + cc[2] * basis_num(lat, 2, 0),
                    cc[0] * basis_num(lat, 0, 1) + cc[1] * basis_num(lat, 1, 1) + cc[2] * basis_num(lat, 2, 1),
                    cc[0] * basis_num(lat, 0, 2) + cc[1] * basis_num(lat, 1, 2) + cc[2] * basis_num(lat, 2, 2),
                ];
                let x = Elem::new(num, lat.den);
                let s1 = f.sigma1(&x);
                if s1 <= 0.0 {
                    continue;
                }
                let s2 = f.sigma2(&x).norm();
                let (l1, l2) = (s1.ln(), s2.ln());
                if l1 + 2.0 * l2 > log_k + 1e-7 || (l1 - l2).abs() > window + 1e-7 {
                    continue;
                }
                let n = f.norm(&x).abs();
                if n <= bound {
                    out.push(Found { elem: x, abs_norm: n });
                }
            }
        }
    }
    out.sort_by(|p, q| p.abs_norm.cmp(&q.abs_norm).then(p.elem.cmp(&q.elem)));
    out.dedup();
    out
}

fn basis_num(lat: &Lattice, i: usize, j: usize) -> i128 {
    lat.h[i][j]
}

/// Half-width of a fundamental window for multiplication by `unit`.
pub fn unit_window(f: &CubicField, unit: &Elem) -> f64 {
    0.5 * f.log_ratio(unit).abs() + 1e-6
}

/// Elements of minimal absolute norm in `lat` modulo `±unit^Z` (up to
/// duplicates near the window edge), searching up to `bound`.
pub fn minimal_elements(f: &CubicField, lat: &Lattice, bound: Ratio<i128>, unit: &Elem) -> Vec<Found> {
    let all = bounded_norm_elements(f, lat, bound, unit_window(f, unit));
    let Some(min) = all.first().map(|x| x.abs_norm) else {
        return Vec::new();
    };
    all.into_iter().filter(|x| x.abs_norm == min).collect()
}
