use crate::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;
const RHO_BUDGET: u64 = 1 << 22;

/// Sign and prime-power factors of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> i128 {
        let mut v: i128 = self.sign as i128;
        for &(p, e) in &self.factors {
            v *= (p as i128).pow(e);
        }
        v
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's variant of Pollard rho with a fixed increment schedule.
fn rho(n: u64, budget: &mut u64) -> Option<u64> {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return Some(d);
        }
    }
    None
}

fn push(factors: &mut Vec<(u64, u32)>, p: u64) {
    match factors.iter_mut().find(|f| f.0 == p) {
        Some(f) => f.1 += 1,
        None => factors.push((p, 1)),
    }
}

/// Trial division up to 10^6, then Pollard rho with a bounded step budget.
pub fn factor_integer(n: i128) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let sign = if n < 0 { -1 } else { 1 };
    let mut m: u64 = u64::try_from(n.unsigned_abs())
        .map_err(|_| Error::Domain(format!("{n} exceeds the 64-bit factoring range")))?;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= m {
        while m % d == 0 {
            push(&mut factors, d);
            m /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if m > 1 {
        stack.push(m);
    }
    let mut budget = RHO_BUDGET;
    while let Some(k) = stack.pop() {
        if is_prime_u64(k) {
            push(&mut factors, k);
            continue;
        }
        match rho(k, &mut budget) {
            Some(f) => {
                stack.push(f);
                stack.push(k / f);
            }
            None => {
                factors.sort_unstable();
                return Err(Error::FactorBudget { n, partial: factors, rest: k });
            }
        }
    }
    factors.sort_unstable();
    Ok(Factorization { sign, factors })
}
