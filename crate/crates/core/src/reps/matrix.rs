use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

pub type IntMat3 = [[i128; 3]; 3];

pub fn det3(g: &IntMat3) -> BigInt {
    let m = |i: usize, j: usize| BigInt::from(g[i][j]);
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

const SYM_BASIS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Matrix of `g` acting on the symmetric square, basis `e_i e_j`, `i <= j`.
pub fn sym2(g: &IntMat3) -> [[BigInt; 6]; 6] {
    let g = |i: usize, j: usize| BigInt::from(g[i][j]);
    std::array::from_fn(|r| {
        let (i, j) = SYM_BASIS[r];
        std::array::from_fn(|c| {
            let (a, b) = SYM_BASIS[c];
            if i == j {
                g(i, a) * g(j, b)
            } else {
                g(i, a) * g(j, b) + g(j, a) * g(i, b)
            }
        })
    })
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det<const N: usize>(mut m: [[BigInt; N]; N]) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..N {
        if m[k][k].is_zero() {
            match (k + 1..N).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..N {
            for j in k + 1..N {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[N - 1][N - 1]
}

/// `tr psi(g) = det(1 - eta(g))` for integral `g` of determinant one.
pub fn tr_psi_exact(g: &IntMat3) -> Result<BigInt> {
    let d = det3(g);
    if !d.is_one() {
        return Err(Error::DetNotOne(d.try_into().unwrap_or(i128::MAX)));
    }
    let s = sym2(g);
    let m: [[BigInt; 6]; 6] =
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { BigInt::one() } else { BigInt::zero() } - &s[i][j]));
    Ok(bareiss_det(m))
}

/// `(1-a^2)(1-b^2)(1-c^2)(1-ab)(1-bc)(1-ca)` for eigenvalues with `abc = 1`.
pub fn det_eta_product(a: Complex64, b: Complex64, c: Complex64) -> Result<Complex64> {
    let p = a * b * c;
    if (p - 1.0).norm() > 1e-9 * (a.norm() * b.norm() * c.norm()).max(1.0) {
        return Err(Error::Domain(format!("eigenvalue product {p} is not 1")));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok((one - a * a) * (one - b * b) * (one - c * c) * (one - a * b) * (one - b * c) * (one - c * a))
}
