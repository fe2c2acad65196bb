use crate::exact::{isolate_real_root, UnitPoly};
use crate::Result;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use std::fmt;

/// Element `(a0 + a1 X + a2 X^2) / den` of `Q[X]/(f)`, stored reduced with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub num: [i128; 3],
    pub den: i128,
}

impl Elem {
    pub fn new(num: [i128; 3], den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.iter().fold(den, |g, v| g.gcd(v));
        let s = if den < 0 { -g } else { g };
        Elem {
            num: [num[0] / s, num[1] / s, num[2] / s],
            den: den / s,
        }
    }

    pub fn int(n: i128) -> Self {
        Elem::new([n, 0, 0], 1)
    }

    pub fn one() -> Self {
        Elem::int(1)
    }

    /// The generator X.
    pub fn gen() -> Self {
        Elem::new([0, 1, 0], 1)
    }

    pub fn is_zero(&self) -> bool {
        self.num == [0; 3]
    }

    pub fn rational(q: Ratio<i128>) -> Self {
        Elem::new([*q.numer(), 0, 0], *q.denom())
    }

    pub fn add(&self, o: &Elem) -> Elem {
        let l = self.den.lcm(&o.den);
        let (a, b) = (l / self.den, l / o.den);
        Elem::new(
            [
                self.num[0] * a + o.num[0] * b,
                self.num[1] * a + o.num[1] * b,
                self.num[2] * a + o.num[2] * b,
            ],
            l,
        )
    }

    pub fn neg(&self) -> Elem {
        Elem::new([-self.num[0], -self.num[1], -self.num[2]], self.den)
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: Ratio<i128>) -> Elem {
        Elem::new(
            [self.num[0] * q.numer(), self.num[1] * q.numer(), self.num[2] * q.numer()],
            self.den * q.denom(),
        )
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}x + {}x^2)/{}", self.num[0], self.num[1], self.num[2], self.den)
    }
}

/// Rational 3x3 matrix `m / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatMat {
    pub m: [[i128; 3]; 3],
    pub den: i128,
}

pub fn mat_mul(a: &[[i128; 3]; 3], b: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let mut r = [[0i128; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..3 {
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    r
}

pub fn det3(a: &[[i128; 3]; 3]) -> i128 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Adjugate, so that `a * adj(a) = det(a) * I`.
pub fn adj3(a: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let c = |i0: usize, i1: usize, j0: usize, j1: usize| a[i0][j0] * a[i1][j1] - a[i0][j1] * a[i1][j0];
    [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

impl RatMat {
    pub fn new(m: [[i128; 3]; 3], den: i128) -> Self {
        let g = m.iter().flatten().fold(den, |g, v| g.gcd(v));
        let s = if den < 0 { -g } else { g };
        let mut r = m;
        for row in r.iter_mut() {
            for v in row.iter_mut() {
                *v /= s;
            }
        }
        RatMat { m: r, den: den / s }
    }

    pub fn mul(&self, o: &RatMat) -> RatMat {
        RatMat::new(mat_mul(&self.m, &o.m), self.den * o.den)
    }
}

/// A complex cubic field `Q[X]/(f)` with numeric embeddings of `X`.
#[derive(Debug, Clone)]
pub struct CubicField {
    pub poly: UnitPoly,
    pub disc: i128,
    /// Real embedding of X.
    pub real: f64,
    /// Complex embedding of X with positive imaginary part.
    pub complex: Complex64,
}

impl CubicField {
    pub fn new(poly: UnitPoly) -> Result<Self> {
        let root = isolate_real_root(poly, Ratio::new(1, 1 << 40))?;
        let (t, s) = (poly.t as f64, poly.s as f64);
        let f = |x: f64| ((x - t) * x + s) * x - 1.0;
        let df = |x: f64| (3.0 * x - 2.0 * t) * x + s;
        let mut x = root.mid_f64();
        for _ in 0..3 {
            let d = df(x);
            if d != 0.0 {
                let nx = x - f(x) / d;
                if nx.is_finite() {
                    x = nx;
                }
            }
        }
        // Remaining pair satisfies X^2 - (t - x) X + 1/x.
        let b = t - x;
        let im = (4.0 / x - b * b).max(0.0).sqrt();
        let mut z = Complex64::new(0.5 * b, 0.5 * im);
        let fc = |z: Complex64| ((z - t) * z + s) * z - 1.0;
        let dfc = |z: Complex64| (z * 3.0 - 2.0 * t) * z + s;
        for _ in 0..3 {
            let d = dfc(z);
            if d.norm() > 0.0 {
                let nz = z - fc(z) / d;
                if nz.is_finite() {
                    z = nz;
                }
            }
        }
        Ok(CubicField {
            poly,
            disc: poly.disc(),
            real: x,
            complex: z,
        })
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let (t, s) = (self.poly.t as i128, self.poly.s as i128);
        let (x, y) = (&a.num, &b.num);
        let c0 = x[0] * y[0];
        let c1 = x[0] * y[1] + x[1] * y[0];
        let c2 = x[0] * y[2] + x[1] * y[1] + x[2] * y[0];
        let c3 = x[1] * y[2] + x[2] * y[1];
        let c4 = x[2] * y[2];
        Elem::new(
            [
                c0 + c3 + c4 * t,
                c1 - c3 * s + c4 * (1 - t * s),
                c2 + c3 * t + c4 * (t * t - s),
            ],
            a.den * b.den,
        )
    }

    pub fn pow(&self, a: &Elem, mut e: u32) -> Elem {
        let mut r = Elem::one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// Matrix of multiplication by `a` on row vectors in the power basis.
    pub fn mul_matrix(&self, a: &Elem) -> RatMat {
        RatMat::new(self.mul_rows(&a.num), a.den)
    }

    fn mul_rows(&self, a: &[i128; 3]) -> [[i128; 3]; 3] {
        let (t, s) = (self.poly.t as i128, self.poly.s as i128);
        // a * X: shift and reduce X^3 = t X^2 - s X + 1.
        let times_x = |v: [i128; 3]| [v[2], v[0] - s * v[2], v[1] + t * v[2]];
        let r0 = *a;
        let r1 = times_x(r0);
        let r2 = times_x(r1);
        [r0, r1, r2]
    }

    pub fn norm(&self, a: &Elem) -> Ratio<i128> {
        Ratio::new(det3(&self.mul_rows(&a.num)), a.den.pow(3))
    }

    pub fn trace(&self, a: &Elem) -> Ratio<i128> {
        let m = self.mul_rows(&a.num);
        Ratio::new(m[0][0] + m[1][1] + m[2][2], a.den)
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let m = self.mul_rows(&a.num);
        let d = det3(&m);
        // 1 * M^{-1} gives the coordinates of a^{-1} (numerator part).
        let adj = adj3(&m);
        Elem::new(adj[0], d).scale(Ratio::from_integer(a.den))
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, &self.inv(b))
    }

    /// Real embedding.
    pub fn sigma1(&self, a: &Elem) -> f64 {
        let x = self.real;
        (a.num[0] as f64 + x * (a.num[1] as f64 + x * a.num[2] as f64)) / a.den as f64
    }

    /// Complex embedding.
    pub fn sigma2(&self, a: &Elem) -> Complex64 {
        let z = self.complex;
        (z * a.num[2] as f64 + a.num[1] as f64) * z / a.den as f64 + a.num[0] as f64 / a.den as f64
    }

    /// `log|sigma1| - log|sigma2|`, additive on products.
    pub fn log_ratio(&self, a: &Elem) -> f64 {
        self.sigma1(a).abs().ln() - self.sigma2(a).norm().ln()
    }
}

