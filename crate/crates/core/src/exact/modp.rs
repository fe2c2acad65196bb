//! Linear algebra over F_p for 3-dimensional spaces, p < 2^32.
//!
//! Vectors are rows; a matrix `a` acts by `v -> v * a`.

pub type Vec3 = [u64; 3];
pub type Mat3 = [[u64; 3]; 3];

pub fn reduce(x: i128, p: u64) -> u64 {
    x.rem_euclid(p as i128) as u64
}

pub fn reduce_mat(m: &[[i128; 3]; 3], p: u64) -> Mat3 {
    let mut r = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = reduce(m[i][j], p);
        }
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn vec_mat(v: &Vec3, a: &Mat3, p: u64) -> Vec3 {
    let mut w = [0u64; 3];
    for j in 0..3 {
        w[j] = (v[0] * a[0][j] % p + v[1] * a[1][j] % p + v[2] * a[2][j] % p) % p;
    }
    w
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut t = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn is_scalar(a: &Mat3) -> bool {
    (0..3).all(|i| (0..3).all(|j| if i == j { a[i][i] == a[0][0] } else { a[i][j] == 0 }))
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize(v: &Vec3, p: u64) -> Vec3 {
    let lead = v.iter().copied().find(|x| *x != 0).expect("nonzero vector");
    let k = inv(lead, p);
    [v[0] * k % p, v[1] * k % p, v[2] * k % p]
}

fn parallel(v: &Vec3, w: &Vec3, p: u64) -> bool {
    let c = |i: usize, j: usize| (v[i] * w[j] % p + p - v[j] * w[i] % p) % p;
    c(0, 1) == 0 && c(0, 2) == 0 && c(1, 2) == 0
}

/// Basis of `{x : r . x = 0 for every row r}`, the right null space of the rows.
pub fn null_space(rows: &[Vec3], p: u64) -> Vec<Vec3> {
    let mut m: Vec<Vec3> = rows.iter().map(|r| [r[0] % p, r[1] % p, r[2] % p]).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(sel) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, sel);
        let k = inv(m[row][col], p);
        for j in 0..3 {
            m[row][j] = m[row][j] * k % p;
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..3 {
                    m[i][j] = (m[i][j] + p - f * m[row][j] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in (0..3).filter(|c| !pivots.contains(c)) {
        let mut x = [0u64; 3];
        x[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = (p - m[r][free]) % p;
        }
        basis.push(x);
    }
    basis
}

/// Basis of `{v : v * a = 0}`.
pub fn left_kernel(a: &Mat3, p: u64) -> Vec<Vec3> {
    null_space(&transpose(a), p)
}

pub fn rank(rows: &[Vec3], p: u64) -> usize {
    3 - null_space(rows, p).len()
}

fn det(a: &Mat3, p: u64) -> u64 {
    let t = |i: usize, j: usize, k: usize| a[0][i] * (a[1][j] * a[2][k] % p) % p;
    let pos = (t(0, 1, 2) + t(1, 2, 0) + t(2, 0, 1)) % p;
    let neg = (t(0, 2, 1) + t(1, 0, 2) + t(2, 1, 0)) % p;
    (pos + p - neg) % p
}

fn shift(a: &Mat3, x: u64, p: u64) -> Mat3 {
    let mut b = *a;
    for i in 0..3 {
        b[i][i] = (b[i][i] + p - x) % p;
    }
    b
}

/// All lines in F_p^3, normalized.
pub fn all_lines(p: u64) -> Vec<Vec3> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            out.push([1, a, b]);
        }
    }
    for b in 0..p {
        out.push([0, 1, b]);
    }
    out.push([0, 0, 1]);
    out
}

/// Lines `<v>` with `v * a` in `<v>` for every matrix in `mats`, normalized
/// and sorted.
pub fn invariant_lines(mats: &[Mat3], p: u64) -> Vec<Vec3> {
    let Some(a) = mats.iter().find(|m| !is_scalar(m)) else {
        return all_lines(p);
    };
    let mut out = Vec::new();
    for x in 0..p {
        if det(&shift(a, x, p), p) != 0 {
            continue;
        }
        let k = left_kernel(&shift(a, x, p), p);
        let mut cands = Vec::new();
        match k.len() {
            1 => cands.push(k[0]),
            2 => {
                cands.push(k[1]);
                for c in 0..p {
                    cands.push([
                        (k[0][0] + c * k[1][0]) % p,
                        (k[0][1] + c * k[1][1]) % p,
                        (k[0][2] + c * k[1][2]) % p,
                    ]);
                }
            }
            _ => unreachable!("non-scalar matrix has eigenspaces of dimension at most 2"),
        }
        for v in cands {
            if mats.iter().all(|m| parallel(&v, &vec_mat(&v, m, p), p)) {
                out.push(normalize(&v, p));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Invariant planes, each given by two basis rows, sorted by annihilator.
pub fn invariant_planes(mats: &[Mat3], p: u64) -> Vec<[Vec3; 2]> {
    let tr: Vec<Mat3> = mats.iter().map(transpose).collect();
    invariant_lines(&tr, p)
        .into_iter()
        .map(|u| {
            let b = null_space(&[u], p);
            [b[0], b[1]]
        })
        .collect()
}
