//! Random integral elements of the norm-one parts of the three standard
//! proper parabolic subgroups of SL3.

use cubic_core::reps::IntMat3;
use rand::Rng;

fn random_gl2<R: Rng>(rng: &mut R) -> [[i128; 2]; 2] {
    let mut m = [[1i128, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..6) {
        let e: i128 = rng.gen_range(-3..=3);
        let g = match rng.gen_range(0..3) {
            0 => [[1, e], [0, 1]],
            1 => [[1, 0], [e, 1]],
            _ => [[0, 1], [1, 0]],
        };
        m = [
            [m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]],
            [m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]],
        ];
    }
    m
}

/// `shape` 0 is the Borel, 1 has Levi blocks (2,1), 2 has Levi blocks (1,2).
pub fn sample<R: Rng>(rng: &mut R, shape: usize) -> IntMat3 {
    let sign = |rng: &mut R| if rng.gen_bool(0.5) { 1 } else { -1 };
    match shape {
        0 => {
            let (a, b) = (sign(rng), sign(rng));
            [[a, rng.gen_range(-9..=9), rng.gen_range(-9..=9)], [0, b, rng.gen_range(-9..=9)], [0, 0, a * b]]
        }
        1 => {
            let m = random_gl2(rng);
            let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            [[m[0][0], m[0][1], rng.gen_range(-9..=9)], [m[1][0], m[1][1], rng.gen_range(-9..=9)], [0, 0, d]]
        }
        _ => {
            let m = random_gl2(rng);
            let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            [[d, rng.gen_range(-9..=9), rng.gen_range(-9..=9)], [0, m[0][0], m[0][1]], [0, m[1][0], m[1][1]]]
        }
    }
}
