use super::poly::UnitPoly;
use crate::Result;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default bracket width, 10^-12.
pub fn default_precision() -> Ratio<i64> {
    Ratio::new(1, 1_000_000_000_000)
}

/// Rational bracket around the real root of an admissible unit polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedRoot {
    pub lower: BigRational,
    pub upper: BigRational,
    pub precision: Ratio<i64>,
}

impl CertifiedRoot {
    pub fn lower_f64(&self) -> f64 {
        self.lower.to_f64().expect("finite bracket")
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper.to_f64().expect("finite bracket")
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lower_f64() + self.upper_f64())
    }
}

// Sign of 2^(3e) f(n / 2^e).
fn sign_at(p: UnitPoly, n: &BigInt, e: u32) -> i32 {
    let d = BigInt::one() << e;
    let v = ((n - BigInt::from(p.t) * &d) * n + BigInt::from(p.s) * &d * &d) * n - &d * &d * &d;
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Bisects `[0, 1 + |t| + |s|]` with exact dyadic arithmetic.
///
/// The sequence of brackets depends only on `p`, so a finer precision always
/// returns a sub-bracket of a coarser one.
pub fn isolate_real_root(p: UnitPoly, precision: Ratio<i64>) -> Result<CertifiedRoot> {
    p.require_admissible()?;
    assert!(*precision.numer() > 0 && *precision.denom() > 0, "precision must be positive");
    let bound = BigInt::from(1 + p.t.abs() + p.s.abs());
    let (pn, pd) = (BigInt::from(*precision.numer()), BigInt::from(*precision.denom()));
    // lower = lo / 2^e, upper = (lo + width) / 2^e with width = bound at e = 0.
    let mut lo = BigInt::zero();
    let mut hi = bound.clone();
    let mut e = 0u32;
    debug_assert!(sign_at(p, &lo, 0) < 0 && sign_at(p, &hi, 0) > 0);
    // Stop once bound / 2^e <= pn / pd.
    while &bound * &pd > &pn << e {
        lo <<= 1;
        hi <<= 1;
        e += 1;
        let mid = (&lo + &hi) >> 1;
        match sign_at(p, &mid, e) {
            s if s < 0 => lo = mid,
            s if s > 0 => hi = mid,
            _ => unreachable!("admissible cubic has no dyadic root"),
        }
    }
    let den = BigInt::one() << e;
    Ok(CertifiedRoot {
        lower: BigRational::new(lo, den.clone()),
        upper: BigRational::new(hi, den),
        precision,
    })
}

/// Regulator `R = |log lambda|` and length `l = 3R` with error bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegLen {
    pub r: f64,
    pub l: f64,
    pub r_err: f64,
    pub l_err: f64,
}

pub fn regulator_and_length(p: UnitPoly, precision: Ratio<i64>) -> Result<RegLen> {
    let root = isolate_real_root(p, precision)?;
    let (a, b) = (root.lower_f64(), root.upper_f64());
    let (la, lb) = (a.ln().abs(), b.ln().abs());
    let r = 0.5 * (la + lb);
    // Half the log-width plus a rounding allowance for ln and the conversion.
    let r_err = 0.5 * (lb - la).abs() + 4.0 * f64::EPSILON * r.max(1.0);
    Ok(RegLen {
        r,
        l: 3.0 * r,
        r_err,
        l_err: 3.0 * r_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec(den: i64) -> Ratio<i64> {
        Ratio::new(1, den)
    }

    #[test]
    fn plastic_root() {
        let r = isolate_real_root(UnitPoly::new(0, -1), prec(100_000_000)).unwrap();
        let plastic = 1.324_717_957_244_746;
        assert!(r.lower_f64() <= plastic && plastic <= r.upper_f64());
        assert!(r.mid_f64() > 1.32471795 && r.mid_f64() < 1.32471796);
        assert!(&r.upper - &r.lower <= BigRational::new(1.into(), 100_000_000.into()));
    }

    #[test]
    fn other_roots() {
        let r = isolate_real_root(UnitPoly::new(1, 0), prec(1_000_000)).unwrap();
        assert!((r.mid_f64() - 1.465571).abs() < 2e-6);
        let r = isolate_real_root(UnitPoly::new(3, 1), prec(10_000)).unwrap();
        assert!((r.mid_f64() - 2.7692).abs() < 2e-4);
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(isolate_real_root(UnitPoly::new(5, 6), prec(10)).is_err());
    }

    #[test]
    fn regulators() {
        let p = default_precision();
        let a = regulator_and_length(UnitPoly::new(0, -1), p).unwrap();
        assert!((a.r - 0.281200).abs() < 1e-6);
        assert!((a.l - 0.843599).abs() < 1e-6);
        let b = regulator_and_length(UnitPoly::new(2, 1), p).unwrap();
        assert!((b.r - 2.0 * a.r).abs() < 1e-11);
        let c = regulator_and_length(UnitPoly::new(1, 0), p).unwrap();
        assert!((c.r - 0.382245).abs() < 1e-6);
    }

    #[test]
    fn inverse_has_same_regulator() {
        let p = default_precision();
        let a = regulator_and_length(UnitPoly::new(5, 2), p).unwrap();
        let b = regulator_and_length(UnitPoly::new(2, 5), p).unwrap();
        assert!((a.r - b.r).abs() < 1e-10);
    }
}
