//! Example configurations and a deterministic pseudorandom configuration
//! generator, shared by the documentation, the benchmarks, and the test
//! suites.

use num::FromPrimitive;

use crate::pointset::{Point, PointSet};
use crate::Rat;

/// Nine points in ℙ²×ℙ²: a staircase of fibers over q1=(1:0:0),
/// q2=(1:1:0), q3=(1:0:1) with second-factor points q1..q4 (q4=(1:1:1)).
pub const NINE_POINTS: &str = "m 2\nn 2\n\
point 1 0 0 | 1 0 0\n\
point 1 0 0 | 1 1 0\n\
point 1 0 0 | 1 0 1\n\
point 1 0 0 | 1 1 1\n\
point 1 1 0 | 1 0 0\n\
point 1 1 0 | 1 1 0\n\
point 1 1 0 | 1 0 1\n\
point 1 0 1 | 1 0 0\n\
point 1 0 1 | 1 1 0\n";

/// Six points in ℙ¹×ℙ²: the full product of {(1:0),(1:1)} with
/// {(1:0:0),(1:1:0),(1:1:1)}.
pub const SIX_POINTS: &str = "m 1\nn 2\n\
point 1 0 | 1 0 0\n\
point 1 0 | 1 1 0\n\
point 1 0 | 1 1 1\n\
point 1 1 | 1 0 0\n\
point 1 1 | 1 1 0\n\
point 1 1 | 1 1 1\n";

/// Twenty-four points in ℙ²×ℙ²: the 5×5 product of
/// {(1:0:0),(1:1:0),(1:0:1),(1:1:1),(1:1:2)} with itself, minus the point
/// q5×q5.
pub const TWENTY_FOUR_POINTS: &str = "m 2\nn 2\n\
point 1 0 0 | 1 0 0\npoint 1 0 0 | 1 1 0\npoint 1 0 0 | 1 0 1\npoint 1 0 0 | 1 1 1\npoint 1 0 0 | 1 1 2\n\
point 1 1 0 | 1 0 0\npoint 1 1 0 | 1 1 0\npoint 1 1 0 | 1 0 1\npoint 1 1 0 | 1 1 1\npoint 1 1 0 | 1 1 2\n\
point 1 0 1 | 1 0 0\npoint 1 0 1 | 1 1 0\npoint 1 0 1 | 1 0 1\npoint 1 0 1 | 1 1 1\npoint 1 0 1 | 1 1 2\n\
point 1 1 1 | 1 0 0\npoint 1 1 1 | 1 1 0\npoint 1 1 1 | 1 0 1\npoint 1 1 1 | 1 1 1\npoint 1 1 1 | 1 1 2\n\
point 1 1 2 | 1 0 0\npoint 1 1 2 | 1 1 0\npoint 1 1 2 | 1 0 1\npoint 1 1 2 | 1 1 1\n";

/// The 2×2 grid in ℙ¹×ℙ¹, a complete intersection of type (2; 2).
pub const GRID_2X2: &str = "m 1\nn 1\n\
point 1 0 | 1 0\n\
point 1 0 | 1 1\n\
point 1 1 | 1 0\n\
point 1 1 | 1 1\n";

/// Tiny deterministic generator (SplitMix64) so random-configuration tests
/// are reproducible from a single seed without external dependencies.
#[derive(Clone, Debug)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in 0..n.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform value in lo..hi.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo) as u64) as i64
    }
}

fn random_coords(rng: &mut SplitMix64, len: usize) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..len)
            .map(|_| Rat::from_i64(rng.range(-2, 3)).unwrap())
            .collect();
        if v.iter().any(|c| !num::Zero::is_zero(c)) {
            return v;
        }
    }
}

/// A random configuration with m, n ≤ 2, small coordinates, and a point
/// count kept small enough for the exhaustive cross-checks in the tests.
pub fn random_pointset(rng: &mut SplitMix64) -> PointSet {
    let (m, n) = match rng.below(6) {
        0 | 1 | 2 => (1, 1),
        3 => (1, 2),
        4 => (2, 1),
        _ => (2, 2),
    };
    let smax = match (m, n) {
        (1, 1) => 8,
        (2, 2) => 5,
        _ => 6,
    };
    let s = 1 + rng.below(smax) as usize;
    let mut points: Vec<Point> = Vec::new();
    while points.len() < s {
        let p = Point::new(&random_coords(rng, m + 1), &random_coords(rng, n + 1)).unwrap();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    PointSet::from_points(m, n, points).unwrap()
}

/// A random product configuration X1 × X2 (useful for the product laws).
pub fn random_product(rng: &mut SplitMix64) -> PointSet {
    let (m, n) = match rng.below(4) {
        0 | 1 => (1, 1),
        2 => (1, 2),
        _ => (2, 1),
    };
    let s1 = 1 + rng.below(3) as usize;
    let s2 = 1 + rng.below(3) as usize;
    let mut x1: Vec<Vec<Rat>> = Vec::new();
    while x1.len() < s1 {
        let c = crate::pointset::normalize_coords(&random_coords(rng, m + 1)).unwrap();
        if !x1.contains(&c) {
            x1.push(c);
        }
    }
    let mut x2: Vec<Vec<Rat>> = Vec::new();
    while x2.len() < s2 {
        let c = crate::pointset::normalize_coords(&random_coords(rng, n + 1)).unwrap();
        if !x2.contains(&c) {
            x2.push(c);
        }
    }
    let pts: Vec<Point> = x1
        .iter()
        .flat_map(|a| x2.iter().map(move |b| Point::new(a, b).unwrap()))
        .collect();
    PointSet::from_points(m, n, pts).unwrap()
}
