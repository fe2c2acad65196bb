//! Class numbers of maximal orders against the analytic class number
//! formula `h R = sqrt|d| res(zeta_K) / (2 pi)`, with the residue taken as a
//! truncated Euler product.

use cubic_core::census::run_sweep;
use cubic_core::exact::{default_precision, UnitPoly};
use cubic_core::orders::maximal_order;

const PRIME_LIMIT: usize = 300_000;

fn primes() -> Vec<i128> {
    let mut sieve = vec![true; PRIME_LIMIT];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..PRIME_LIMIT {
        if sieve[i] {
            for j in (i * i..PRIME_LIMIT).step_by(i) {
                sieve[j] = false;
            }
        }
    }
    (0..PRIME_LIMIT).filter(|&i| sieve[i]).map(|i| i as i128).collect()
}

fn inv_mod(a: i128, p: i128) -> i128 {
    let (mut r, mut e, mut b) = (1, p - 2, a.rem_euclid(p));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn trim(mut a: Vec<i128>) -> Vec<i128> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

// Polynomials over Z/p, low degree first.
fn rem(mut a: Vec<i128>, b: &[i128], p: i128) -> Vec<i128> {
    let lead = inv_mod(*b.last().unwrap(), p);
    while a.len() >= b.len() {
        let c = a.last().unwrap() * lead % p;
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] - c * bi).rem_euclid(p);
        }
        a = trim(a);
    }
    a
}

fn gcd_degree(mut a: Vec<i128>, mut b: Vec<i128>, p: i128) -> usize {
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a.len() - 1
}

// Number of distinct roots of f mod p, from gcd(f, x^p - x).
fn distinct_roots(f: UnitPoly, p: i128) -> usize {
    let fm: Vec<i128> = f.coeffs().iter().map(|c| c.rem_euclid(p)).chain([1]).collect();
    let mul = |a: &[i128], b: &[i128]| {
        let mut c = vec![0i128; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        rem(trim(c), &fm, p)
    };
    let (mut r, mut base, mut e) = (vec![1i128], vec![0, 1], p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul(&r, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    r.resize(3, 0);
    r[1] = (r[1] - 1).rem_euclid(p);
    gcd_degree(fm.clone(), trim(r), p)
}

// Local factor of zeta_K / zeta at p for a monogenic maximal order, read off
// the factorization of f mod p (Dedekind-Kummer).
fn local_factor(f: UnitPoly, p: i128) -> f64 {
    let q = p as f64;
    let roots = distinct_roots(f, p);
    let zeta_k = if f.disc().rem_euclid(p) != 0 {
        match roots {
            0 => 1.0 / (1.0 - q.powi(-3)),
            1 => 1.0 / ((1.0 - 1.0 / q) * (1.0 - q.powi(-2))),
            _ => (1.0 - 1.0 / q).powi(-3),
        }
    } else if roots == 1 {
        // triple root
        1.0 / (1.0 - 1.0 / q)
    } else {
        (1.0 - 1.0 / q).powi(-2)
    };
    (1.0 - 1.0 / q) * zeta_k
}

#[test]
fn maximal_class_numbers_match_euler_product() {
    let primes = primes();
    let c = run_sweep(2.0, default_precision()).unwrap();
    let mut checked = 0;
    let mut worst = 0.0f64;
    for u in c.units.iter().filter(|u| u.exponent == 1) {
        let p = u.poly;
        let top = maximal_order(p).unwrap();
        if top.disc != p.disc() {
            continue;
        }
        let key = format!("{p}|1|1,0,0;1,0;1");
        let h = c.order(&key).unwrap().h_total;
        let residue: f64 = primes.iter().map(|&q| local_factor(p, q)).product();
        let estimate = (top.disc.abs() as f64).sqrt() * residue / (2.0 * std::f64::consts::PI * u.r);
        let dev = (estimate / h as f64 - 1.0).abs();
        worst = worst.max(dev);
        assert!(dev < 0.01, "{p}: h = {h}, analytic estimate {estimate}");
        checked += 1;
    }
    assert!(checked >= 30, "only {checked} fields checked");
    eprintln!("{checked} fields, worst relative deviation {worst:.4}");
    assert!(worst < 0.01);
}
