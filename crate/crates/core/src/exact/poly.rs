use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::fmt;
use std::str::FromStr;

/// Characteristic polynomial `X^3 - t X^2 + s X - 1` of a norm-one unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitPoly {
    pub t: i64,
    pub s: i64,
}

impl UnitPoly {
    pub const fn new(t: i64, s: i64) -> Self {
        UnitPoly { t, s }
    }

    /// The polynomial of the inverse unit.
    pub fn inverse(self) -> Self {
        UnitPoly::new(self.s, self.t)
    }

    /// Representative with `t > s`; for admissible polynomials this is the
    /// orientation whose real root exceeds 1.
    pub fn canonical(self) -> Self {
        if self.t >= self.s {
            self
        } else {
            self.inverse()
        }
    }

    pub fn is_canonical(self) -> bool {
        self.t > self.s
    }

    /// Coefficients `[c0, c1, c2]` of the monic cubic, low degree first.
    pub fn coeffs(self) -> [i128; 3] {
        [-1, self.s as i128, -(self.t as i128)]
    }

    pub fn eval_i128(self, x: i128) -> i128 {
        let (t, s) = (self.t as i128, self.s as i128);
        ((x - t) * x + s) * x - 1
    }

    pub fn disc(self) -> i128 {
        disc_cubic(self)
    }

    pub fn is_admissible(self) -> bool {
        is_admissible(self)
    }

    pub fn require_admissible(self) -> Result<Self> {
        if self.is_admissible() {
            Ok(self)
        } else {
            Err(Error::NotAdmissible(self))
        }
    }

    /// Companion matrix acting on row vectors in the power basis.
    pub fn companion(self) -> [[i128; 3]; 3] {
        let (t, s) = (self.t as i128, self.s as i128);
        [[0, 1, 0], [0, 0, 1], [1, -s, t]]
    }
}

impl fmt::Display for UnitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.t, self.s)
    }
}

impl FromStr for UnitPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse unit polynomial {text:?}, expected \"t,s\""));
        let (a, b) = text.split_once(',').ok_or_else(bad)?;
        let t = a.trim().parse::<i64>().map_err(|_| bad())?;
        let s = b.trim().parse::<i64>().map_err(|_| bad())?;
        Ok(UnitPoly::new(t, s))
    }
}

pub fn disc_cubic(p: UnitPoly) -> i128 {
    let (t, s) = (p.t as i128, p.s as i128);
    t * t * s * s + 18 * t * s - 4 * t * t * t - 4 * s * s * s - 27
}

pub fn is_admissible(p: UnitPoly) -> bool {
    p.s != p.t && p.s != -p.t - 2 && disc_cubic(p) < 0
}

/// Characteristic polynomial of the `mu`-th power, via Newton power sums.
///
/// Panics if the result does not fit in `i64`.
pub fn newton_power(p: UnitPoly, mu: u32) -> UnitPoly {
    assert!(mu >= 1, "newton_power needs mu >= 1");
    if mu == 1 {
        return p;
    }
    let (t, s) = (BigInt::from(p.t), BigInt::from(p.s));
    let n = 2 * mu as usize;
    let mut sums: Vec<BigInt> = Vec::with_capacity(n + 1);
    sums.push(BigInt::from(3));
    sums.push(t.clone());
    sums.push(&t * &t - 2 * &s);
    for k in 3..=n {
        let next = &t * &sums[k - 1] - &s * &sums[k - 2] + &sums[k - 3];
        sums.push(next);
    }
    let pm = &sums[mu as usize];
    let e2: BigInt = (pm * pm - &sums[n]) / 2;
    let to_i64 = |v: &BigInt| {
        v.to_i64()
            .unwrap_or_else(|| panic!("newton_power({p}, {mu}) overflows i64"))
    };
    UnitPoly::new(to_i64(pm), to_i64(&e2))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Sylvester resultant Res(f, f') as an independent discriminant oracle.
    fn resultant_oracle(p: UnitPoly) -> i128 {
        let (t, s) = (p.t as i128, p.s as i128);
        let f = [1, -t, s, -1];
        let g = [3, -2 * t, s];
        let mut m = [[0i128; 5]; 5];
        for r in 0..2 {
            for (j, c) in f.iter().enumerate() {
                m[r][r + j] = *c;
            }
        }
        for r in 0..3 {
            for (j, c) in g.iter().enumerate() {
                m[2 + r][r + j] = *c;
            }
        }
        det5(m)
    }

    fn det5(m: [[i128; 5]; 5]) -> i128 {
        fn rec(m: &Vec<Vec<i128>>) -> i128 {
            if m.len() == 1 {
                return m[0][0];
            }
            let mut acc = 0;
            for c in 0..m.len() {
                if m[0][c] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                acc += sign * m[0][c] * rec(&minor);
            }
            acc
        }
        rec(&m.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn disc_matches_resultant_on_grid() {
        for t in -15..=15 {
            for s in -15..=15 {
                let p = UnitPoly::new(t, s);
                // For a monic cubic, disc = -Res(f, f').
                assert_eq!(disc_cubic(p), -resultant_oracle(p), "{p}");
            }
        }
    }

    #[test]
    fn disc_examples() {
        assert_eq!(disc_cubic(UnitPoly::new(0, -1)), -23);
        assert_eq!(disc_cubic(UnitPoly::new(3, 1)), -76);
        assert_eq!(disc_cubic(UnitPoly::new(5, 6)), 49);
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(UnitPoly::new(0, -1)));
        assert!(!is_admissible(UnitPoly::new(2, 2)));
        assert!(!is_admissible(UnitPoly::new(5, 6)));
        assert!(!is_admissible(UnitPoly::new(1, -3)));
    }

    #[test]
    fn powers_of_plastic_unit() {
        let p = UnitPoly::new(0, -1);
        assert_eq!(newton_power(p, 1), p);
        assert_eq!(newton_power(p, 2), UnitPoly::new(2, 1));
        assert_eq!(newton_power(p, 3), UnitPoly::new(3, 2));
        assert_eq!(disc_cubic(newton_power(p, 2)), -23);
    }

    #[test]
    fn power_of_companion_matches() {
        let p = UnitPoly::new(4, -3);
        let c = p.companion();
        let mul = |a: [[i128; 3]; 3], b: [[i128; 3]; 3]| {
            let mut r = [[0i128; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        r[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            r
        };
        let mut m = c;
        for mu in 2..=6u32 {
            m = mul(m, c);
            let tr = m[0][0] + m[1][1] + m[2][2];
            let e2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
                + m[1][1] * m[2][2]
                - m[1][2] * m[2][1];
            assert_eq!(newton_power(p, mu), UnitPoly::new(tr as i64, e2 as i64));
        }
    }

    #[test]
    fn text_round_trip() {
        let p: UnitPoly = "-3,17".parse().unwrap();
        assert_eq!(p, UnitPoly::new(-3, 17));
        assert_eq!(p.to_string(), "-3,17");
        assert!("3;1".parse::<UnitPoly>().is_err());
    }
}
