//! Quasi-random space-time sample points in `[0, 1]⁴`.

use alloc::vec::Vec;

use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub t: f64,
    pub x: [f64; 3],
}

impl SamplePoint {
    pub fn new(t: f64, x: [f64; 3]) -> Self {
        Self { t, x }
    }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// Halton points (bases 2, 3, 5, 7) with one random toroidal shift drawn from `rng`.
pub fn sample_points<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<SamplePoint> {
    let shift: [f64; 4] = [rng.gen(), rng.gen(), rng.gen(), rng.gen()];
    (1..=count as u64)
        .map(|i| {
            let c = [2u64, 3, 5, 7].map(|b| radical_inverse(i, b));
            let w = |d: usize| {
                let v = c[d] + shift[d];
                if v >= 1.0 {
                    v - 1.0
                } else {
                    v
                }
            };
            SamplePoint::new(w(0), [w(1), w(2), w(3)])
        })
        .collect()
}
