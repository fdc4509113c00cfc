//! Minimal enclosing ball of a 3D point set (move-to-front Welzl).

use nalgebra::{Matrix2, Matrix3, Vector2};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mesh::Vec3;

const SHUFFLE_SEED: u64 = 0x5eed_ba11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub center: Vec3,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, p: &Vec3) -> bool {
        (p - self.center).norm() <= self.radius * (1.0 + 1e-12) + 1e-15
    }
}

/// Ball whose boundary passes through every point in `support`, with its
/// center in their affine hull. `None` if the points are affinely dependent.
pub fn circumball(support: &[Vec3]) -> Option<Ball> {
    let p0 = support[0];
    let center = match support.len() {
        1 => p0,
        2 => (p0 + support[1]) * 0.5,
        3 => {
            let (q1, q2) = (support[1] - p0, support[2] - p0);
            let gram = Matrix2::new(q1.dot(&q1), q1.dot(&q2), q1.dot(&q2), q2.dot(&q2));
            if gram.determinant().abs() <= 1e-12 * gram[(0, 0)] * gram[(1, 1)] {
                return None;
            }
            let rhs = Vector2::new(q1.dot(&q1), q2.dot(&q2)) * 0.5;
            let l = gram.lu().solve(&rhs)?;
            p0 + q1 * l[0] + q2 * l[1]
        }
        4 => {
            let q = [support[1] - p0, support[2] - p0, support[3] - p0];
            let m = Matrix3::from_rows(&[q[0].transpose(), q[1].transpose(), q[2].transpose()]);
            let scale = q[0].norm() * q[1].norm() * q[2].norm();
            if m.determinant().abs() <= 1e-9 * scale {
                return None;
            }
            let rhs = Vec3::new(
                q[0].norm_squared(),
                q[1].norm_squared(),
                q[2].norm_squared(),
            ) * 0.5;
            p0 + m.lu().solve(&rhs)?
        }
        _ => return None,
    };
    let radius = support
        .iter()
        .map(|p| (p - center).norm())
        .fold(0.0, f64::max);
    Some(Ball { center, radius })
}

/// Smallest ball containing a handful of points, by trying every subset.
/// Used when a Welzl support set turns out to be affinely dependent.
fn small_set_ball(points: &[Vec3]) -> Ball {
    let n = points.len();
    let mut best: Option<Ball> = None;
    let mut subset = Vec::with_capacity(4);
    for mask in 1u32..(1 << n) {
        if mask.count_ones() > 4 {
            continue;
        }
        subset.clear();
        subset.extend((0..n).filter(|i| mask & (1 << i) != 0).map(|i| points[i]));
        if let Some(b) = circumball(&subset) {
            if best.is_some_and(|bb| bb.radius <= b.radius) {
                continue;
            }
            if points.iter().all(|p| b.contains(p)) {
                best = Some(b);
            }
        }
    }
    best.expect("a pair of extreme points always yields an enclosing ball")
}

fn support_ball(support: &[Vec3]) -> Option<Ball> {
    if support.is_empty() {
        return None;
    }
    Some(circumball(support).unwrap_or_else(|| small_set_ball(support)))
}

fn mtf(points: &[Vec3], order: &mut [usize], end: usize, support: &mut Vec<Vec3>) -> Option<Ball> {
    let mut ball = support_ball(support);
    if support.len() == 4 {
        return ball;
    }
    for i in 0..end {
        let p = points[order[i]];
        if ball.is_none_or(|b| !b.contains(&p)) {
            support.push(p);
            ball = mtf(points, order, i, support);
            support.pop();
            order[..=i].rotate_right(1);
        }
    }
    ball
}

/// Smallest ball containing every point.
///
/// The input order is replaced by a fixed pseudo-random permutation, so the
/// result is reproducible bit-for-bit.
pub fn min_enclosing_ball(points: &[Vec3]) -> Result<Ball> {
    if points.is_empty() {
        return Err(Error::InvalidInput(
            "enclosing ball of an empty point set".into(),
        ));
    }
    if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(SHUFFLE_SEED));
    let mut support = Vec::with_capacity(4);
    let ball =
        mtf(points, &mut order, points.len(), &mut support).expect("non-empty input yields a ball");
    Ok(ball)
}
