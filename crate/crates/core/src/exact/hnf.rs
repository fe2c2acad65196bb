use crate::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use std::fmt;

/// A full-rank lattice in Q^3 as `(1/den) * h`, with `h` an upper-triangular
/// integer row basis in Hermite normal form and `gcd(den, h) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnfBasis {
    pub den: i128,
    pub h: [[i128; 3]; 3],
}

/// Hermite normal form of the integer row span of `rows` (must have rank 3).
pub fn hnf_int(rows: &[[i128; 3]]) -> Result<[[i128; 3]; 3]> {
    let mut work: Vec<[i128; 3]> = rows.iter().copied().filter(|r| *r != [0; 3]).collect();
    let mut out = [[0i128; 3]; 3];
    for col in 0..3 {
        loop {
            let piv = work
                .iter()
                .enumerate()
                .filter(|(_, r)| r[col] != 0)
                .min_by_key(|(_, r)| r[col].abs())
                .map(|(i, _)| i)
                .ok_or(Error::RankDeficient)?;
            let prow = work[piv];
            let mut done = true;
            for (i, r) in work.iter_mut().enumerate() {
                if i == piv || r[col] == 0 {
                    continue;
                }
                let q = r[col] / prow[col];
                for k in col..3 {
                    r[k] -= q * prow[k];
                }
                if r[col] != 0 {
                    done = false;
                }
            }
            if done {
                let mut row = work.swap_remove(piv);
                if row[col] < 0 {
                    for v in row.iter_mut() {
                        *v = -*v;
                    }
                }
                out[col] = row;
                work.retain(|r| *r != [0; 3]);
                break;
            }
        }
    }
    debug_assert!(work.is_empty());
    for i in 1..3 {
        for j in 0..i {
            let q = Integer::div_floor(&out[j][i], &out[i][i]);
            if q != 0 {
                for k in i..3 {
                    out[j][k] -= q * out[i][k];
                }
            }
        }
    }
    Ok(out)
}

impl HnfBasis {
    /// Lattice spanned by `rows / den`.
    pub fn from_scaled(rows: &[[i128; 3]], den: i128) -> Result<Self> {
        assert!(den > 0, "denominator must be positive");
        let h = hnf_int(rows)?;
        Ok(Self::normalized(h, den))
    }

    fn normalized(mut h: [[i128; 3]; 3], mut den: i128) -> Self {
        let mut g = den;
        for row in &h {
            for v in row {
                g = g.gcd(v);
            }
        }
        if g > 1 {
            den /= g;
            for row in h.iter_mut() {
                for v in row.iter_mut() {
                    *v /= g;
                }
            }
        }
        HnfBasis { den, h }
    }

    pub fn identity() -> Self {
        HnfBasis {
            den: 1,
            h: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        }
    }

    /// Covolume relative to Z^3.
    pub fn det(&self) -> Ratio<i128> {
        Ratio::new(self.h[0][0] * self.h[1][1] * self.h[2][2], self.den.pow(3))
    }

    pub fn row(&self, i: usize) -> [Ratio<i128>; 3] {
        let d = self.den;
        [
            Ratio::new(self.h[i][0], d),
            Ratio::new(self.h[i][1], d),
            Ratio::new(self.h[i][2], d),
        ]
    }

    /// Integer coordinates of `v / vden` in this basis, if it lies in the lattice.
    pub fn coords(&self, v: &[i128; 3], vden: i128) -> Option<[i128; 3]> {
        // Solve c * h / den = v / vden, i.e. c * h * vden = v * den, by forward
        // substitution on the upper-triangular h.
        let target = [v[0] * self.den, v[1] * self.den, v[2] * self.den];
        let mut c = [0i128; 3];
        for j in 0..3 {
            let mut rest = target[j];
            for i in 0..j {
                rest -= c[i] * self.h[i][j] * vden;
            }
            let piv = self.h[j][j] * vden;
            if rest % piv != 0 {
                return None;
            }
            c[j] = rest / piv;
        }
        Some(c)
    }

    pub fn contains(&self, v: &[i128; 3], vden: i128) -> bool {
        self.coords(v, vden).is_some()
    }

    /// Whether `other` is a sublattice of `self`.
    pub fn contains_lattice(&self, other: &HnfBasis) -> bool {
        other.h.iter().all(|r| self.contains(r, other.den))
    }

    /// Serialization `d|h11,h12,h13;h22,h23;h33`.
    pub fn key(&self) -> String {
        self.to_string()
    }

    pub fn parse_key(text: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("malformed lattice key {text:?}"));
        let (d, rest) = text.split_once('|').ok_or_else(bad)?;
        let den: i128 = d.parse().map_err(|_| bad())?;
        let rows: Vec<&str> = rest.split(';').collect();
        if rows.len() != 3 || den <= 0 {
            return Err(bad());
        }
        let mut h = [[0i128; 3]; 3];
        for (i, row) in rows.iter().enumerate() {
            let vals: Vec<&str> = row.split(',').collect();
            if vals.len() != 3 - i {
                return Err(bad());
            }
            for (k, v) in vals.iter().enumerate() {
                h[i][i + k] = v.parse().map_err(|_| bad())?;
            }
        }
        let b = HnfBasis::from_scaled(&h, den)?;
        if b.h != h || b.den != den {
            return Err(bad());
        }
        Ok(b)
    }
}

impl fmt::Display for HnfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = &self.h;
        write!(
            f,
            "{}|{},{},{};{},{};{}",
            self.den, h[0][0], h[0][1], h[0][2], h[1][1], h[1][2], h[2][2]
        )
    }
}

/// Canonical Hermite normal form of the lattice spanned by rational rows.
pub fn hnf(rows: &[[Ratio<i128>; 3]]) -> Result<HnfBasis> {
    let den = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(1i128, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<[i128; 3]> = rows
        .iter()
        .map(|r| {
            let mut out = [0i128; 3];
            for k in 0..3 {
                out[k] = r[k].numer() * (den / r[k].denom());
            }
            out
        })
        .collect();
    HnfBasis::from_scaled(&ints, den)
}
