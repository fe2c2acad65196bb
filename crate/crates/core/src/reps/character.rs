use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Virtual character of the diagonal torus of SL3.
///
/// The key `(i, j)` stands for the monomial `x1^i x2^j`, the third
/// eigenvalue having been eliminated through `x1 x2 x3 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TorusChar(BTreeMap<(i32, i32), i64>);

/// Virtual character of a circle, keyed by the exponent of `z`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KChar(BTreeMap<i32, i64>);

/// Integer multiplicities of irreducibles, keyed by highest weight `(a, b)`
/// on the SL3 side or by `k` (for `delta_{2k}`) on the SO(3) side.
pub type VirtualDecomp<K> = BTreeMap<K, i64>;

fn normalize(p: i32, q: i32, r: i32) -> (i32, i32) {
    (p - r, q - r)
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn add_term<K: Ord>(m: &mut BTreeMap<K, i64>, k: K, c: i64) {
    if c == 0 {
        return;
    }
    *m.entry(k).or_insert(0) += c;
}

fn prune<K: Ord + Clone>(m: &mut BTreeMap<K, i64>) {
    m.retain(|_, c| *c != 0);
}

/// Shared ring operations for the two character types.
pub trait Character: Sized + Clone {
    fn one() -> Self;
    fn dim(&self) -> i64;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, c: i64) -> Self;
    fn tensor(&self, o: &Self) -> Self;
    /// Adams operation: every exponent multiplied by `k`.
    fn adams(&self, k: i32) -> Self;
    fn divide_exact(&self, k: i64) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }
}

macro_rules! impl_character {
    ($ty:ident, |$k:ident, $n:ident| $adams:expr, $zero:expr) => {
        impl Character for $ty {
            fn one() -> Self {
                $ty(BTreeMap::from([($zero, 1)]))
            }

            fn dim(&self) -> i64 {
                self.0.values().sum()
            }

            fn add(&self, o: &Self) -> Self {
                let mut m = self.0.clone();
                for (k, &c) in &o.0 {
                    add_term(&mut m, *k, c);
                }
                prune(&mut m);
                $ty(m)
            }

            fn scale(&self, c: i64) -> Self {
                if c == 0 {
                    return $ty::default();
                }
                $ty(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
            }

            fn tensor(&self, o: &Self) -> Self {
                let mut m = BTreeMap::new();
                for (a, &x) in &self.0 {
                    for (b, &y) in &o.0 {
                        add_term(&mut m, key_add(*a, *b), x * y);
                    }
                }
                prune(&mut m);
                $ty(m)
            }

            fn adams(&self, $n: i32) -> Self {
                $ty(self.0.iter().map(|(&$k, &c)| ($adams, c)).collect())
            }

            fn divide_exact(&self, d: i64) -> Self {
                $ty(self
                    .0
                    .iter()
                    .map(|(k, &c)| {
                        assert!(c % d == 0, "inexact character division by {d}");
                        (*k, c / d)
                    })
                    .collect())
            }
        }
    };
}

trait KeyAdd {
    fn key_add_impl(self, o: Self) -> Self;
}
impl KeyAdd for (i32, i32) {
    fn key_add_impl(self, o: Self) -> Self {
        (self.0 + o.0, self.1 + o.1)
    }
}
impl KeyAdd for i32 {
    fn key_add_impl(self, o: Self) -> Self {
        self + o
    }
}
fn key_add<K: KeyAdd>(a: K, b: K) -> K {
    a.key_add_impl(b)
}

impl_character!(TorusChar, |k, n| (k.0 * n, k.1 * n), (0, 0));
impl_character!(KChar, |k, n| k * n, 0);

/// Exterior power via `k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} psi^i`.
pub fn wedge<C: Character>(c: &C, k: usize) -> C {
    let mut e = vec![C::one()];
    for n in 1..=k {
        let mut acc = C::one().scale(0);
        for i in 1..=n {
            let term = e[n - i].tensor(&c.adams(i as i32));
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        e.push(acc.divide_exact(n as i64));
    }
    e.pop().unwrap()
}

/// Symmetric power via `k h_k = sum_{i=1..k} h_{k-i} psi^i`.
pub fn sym<C: Character>(c: &C, k: usize) -> C {
    let mut h = vec![C::one()];
    for n in 1..=k {
        let mut acc = C::one().scale(0);
        for i in 1..=n {
            acc = acc.add(&h[n - i].tensor(&c.adams(i as i32)));
        }
        h.push(acc.divide_exact(n as i64));
    }
    h.pop().unwrap()
}

pub fn tensor<C: Character>(a: &C, b: &C) -> C {
    a.tensor(b)
}

impl TorusChar {
    pub fn from_terms(terms: impl IntoIterator<Item = ((i32, i32), i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (k, c) in terms {
            add_term(&mut m, k, c);
        }
        prune(&mut m);
        TorusChar(m)
    }

    pub fn terms(&self) -> &BTreeMap<(i32, i32), i64> {
        &self.0
    }

    pub fn coeff(&self, i: i32, j: i32) -> i64 {
        self.0.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Character of the contragredient representation.
    pub fn dual(&self) -> Self {
        TorusChar(self.0.iter().map(|(&(i, j), &c)| ((-i, -j), c)).collect())
    }

    pub fn is_weyl_symmetric(&self) -> bool {
        self.0.iter().all(|(&(i, j), &c)| {
            let e = [i, j, 0];
            PERMS
                .iter()
                .all(|p| self.coeff_norm(e[p[0]], e[p[1]], e[p[2]]) == c)
        })
    }

    fn coeff_norm(&self, p: i32, q: i32, r: i32) -> i64 {
        let (i, j) = normalize(p, q, r);
        self.coeff(i, j)
    }

    /// Restriction to the principal circle, eigenvalues `(z, 1, 1/z)`.
    pub fn principal_circle(&self) -> KChar {
        let mut m = BTreeMap::new();
        for (&(i, _), &c) in &self.0 {
            add_term(&mut m, i, c);
        }
        prune(&mut m);
        KChar(m)
    }
}

impl KChar {
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (k, c) in terms {
            add_term(&mut m, k, c);
        }
        prune(&mut m);
        KChar(m)
    }

    pub fn terms(&self) -> &BTreeMap<i32, i64> {
        &self.0
    }

    pub fn coeff(&self, j: i32) -> i64 {
        self.0.get(&j).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|(&j, &c)| self.coeff(-j) == c)
    }

    /// Value at `z = -1`.
    pub fn at_minus_one(&self) -> i64 {
        self.0
            .iter()
            .map(|(&j, &c)| if j.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }
}

/// Character of `delta_{2k}`, the irreducible SO(3) representation of
/// dimension `2k + 1`, on its maximal circle.
pub fn delta_char(k: u32) -> KChar {
    let k = k as i32;
    KChar::from_terms((-k..=k).map(|j| (j, 1)))
}

impl fmt::Display for TorusChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), &c)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*x^({i},{j})")?;
        }
        Ok(())
    }
}

type Mono = [i32; 3];

fn alternant(e: Mono) -> BTreeMap<Mono, i64> {
    let sign = [1, -1, -1, 1, 1, -1];
    let mut m = BTreeMap::new();
    for (p, s) in PERMS.iter().zip(sign) {
        add_term(&mut m, [e[p[0]], e[p[1]], e[p[2]]], s);
    }
    prune(&mut m);
    m
}

/// Exact division of a polynomial in three variables by `x_u - x_v`.
fn divide_by_difference(mut p: BTreeMap<Mono, i64>, u: usize, v: usize) -> BTreeMap<Mono, i64> {
    let mut q = BTreeMap::new();
    loop {
        let lead = p.iter().filter(|(_, &c)| c != 0).max_by_key(|(m, _)| (m[u], **m)).map(|(m, &c)| (*m, c));
        let Some((m, c)) = lead else { break };
        assert!(m[u] > 0, "polynomial not divisible by x{} - x{}", u + 1, v + 1);
        let mut t = m;
        t[u] -= 1;
        add_term(&mut q, t, c);
        add_term(&mut p, m, -c);
        let mut s = t;
        s[v] += 1;
        add_term(&mut p, s, c);
        prune(&mut p);
    }
    prune(&mut q);
    q
}

/// Character of the irreducible representation with highest weight
/// `a*lambda1 + b*lambda2`, as a ratio of alternants.
pub fn irr_char(a: i64, b: i64) -> Result<TorusChar> {
    if !(a >= b && b >= 0) {
        return Err(Error::NonDominant(a, b));
    }
    let mut p = alternant([a as i32 + 2, b as i32 + 1, 0]);
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        p = divide_by_difference(p, u, v);
    }
    Ok(TorusChar::from_terms(
        p.into_iter().map(|(m, c)| (normalize(m[0], m[1], m[2]), c)),
    ))
}

/// Weyl dimension formula.
pub fn weyl_dim(a: i64, b: i64) -> i64 {
    (a - b + 1) * (b + 1) * (a + 2) / 2
}

/// Virtual decomposition into irreducibles by repeatedly peeling the
/// lexicographically highest monomial, which is always dominant.
pub fn decompose(c: &TorusChar) -> Result<VirtualDecomp<(i64, i64)>> {
    if !c.is_weyl_symmetric() {
        return Err(Error::NotWeylSymmetric);
    }
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while let Some((&(i, j), &m)) = rest.0.iter().next_back() {
        let w = irr_char(i as i64, j as i64)?;
        out.insert((i as i64, j as i64), m);
        rest = rest.sub(&w.scale(m));
    }
    Ok(out)
}

/// Rebuilds the character of a virtual decomposition.
pub fn recompose(d: &VirtualDecomp<(i64, i64)>) -> Result<TorusChar> {
    let mut c = TorusChar::default();
    for (&(a, b), &m) in d {
        c = c.add(&irr_char(a, b)?.scale(m));
    }
    Ok(c)
}

/// The standard representation.
pub fn st_char() -> TorusChar {
    TorusChar::from_terms([((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)])
}

/// Symmetric square of the standard representation.
pub fn eta_char() -> TorusChar {
    sym(&st_char(), 2)
}

/// `sum_j (-1)^j wedge^j eta`, whose trace is `det(1 - eta)`.
pub fn psi_char() -> TorusChar {
    let eta = eta_char();
    (0..=6).fold(TorusChar::default(), |acc, j| {
        let w = wedge(&eta, j);
        if j % 2 == 0 {
            acc.add(&w)
        } else {
            acc.sub(&w)
        }
    })
}

/// Decomposes an SO(3) character into `delta_{2k}`, keyed by `k`.
pub fn decompose_k(c: &KChar) -> Result<VirtualDecomp<u32>> {
    if !c.is_symmetric() {
        return Err(Error::Domain("circle character is not symmetric under z -> 1/z".into()));
    }
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while let Some((&k, &m)) = rest.0.iter().next_back() {
        out.insert(k as u32, m);
        rest = rest.sub(&delta_char(k as u32).scale(m));
    }
    Ok(out)
}

/// Restriction of `W_{a lambda1 + b lambda2}` to the principal SO(3).
pub fn branch_to_k(a: i64, b: i64) -> Result<VirtualDecomp<u32>> {
    decompose_k(&irr_char(a, b)?.principal_circle())
}

/// Multiplicities of the four characters of the diagonal Klein subgroup in
/// `delta_{2k}`, from its values at the identity and at a half-turn.
pub fn branch_k_to_m0(k: u32) -> [i64; 4] {
    let c = delta_char(k);
    let (e, r) = (c.dim(), c.at_minus_one());
    // xi_0 is trivial; xi_1..xi_3 are +1 on one half-turn and -1 on the other two.
    let xi0 = (e + 3 * r) / 4;
    let xi = (e + r - 2 * r) / 4;
    [xi0, xi, xi, xi]
}

/// Restriction of `delta_{2k}` to the rotation circle.
pub fn branch_k_to_so2(k: u32) -> KChar {
    delta_char(k)
}
