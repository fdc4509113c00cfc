//! Independent oracles. Nothing here calls into the code path it checks.
#![allow(dead_code)]

use num_complex::Complex64;
use radial_retrieval::mesh::Vec3;

// ---------------------------------------------------------------------------
// Enclosing ball: enumerate every 1..=4 point support set, take the smallest
// circumscribed ball (center in the support's affine hull) containing all points.

fn circumcenter(s: &[Vec3]) -> Option<Vec3> {
    let a = s[0];
    match s.len() {
        1 => Some(a),
        2 => Some((a + s[1]) / 2.0),
        3 => {
            let (ab, ac) = (s[1] - a, s[2] - a);
            let n = ab.cross(&ac);
            let denom = 2.0 * n.norm_squared();
            if denom < 1e-14 * ab.norm_squared() * ac.norm_squared() {
                return None;
            }
            Some(a + (n.cross(&ab) * ac.norm_squared() + ac.cross(&n) * ab.norm_squared()) / denom)
        }
        4 => {
            let (b, c, d) = (s[1] - a, s[2] - a, s[3] - a);
            let det = 2.0 * b.dot(&c.cross(&d));
            if det.abs() < 1e-10 * b.norm() * c.norm() * d.norm() {
                return None;
            }
            Some(
                a + (c.cross(&d) * b.norm_squared()
                    + d.cross(&b) * c.norm_squared()
                    + b.cross(&c) * d.norm_squared())
                    / det,
            )
        }
        _ => None,
    }
}

/// Radius of the minimal enclosing ball by exhaustive support-set search.
pub fn brute_force_ball(points: &[Vec3]) -> (Vec3, f64) {
    let n = points.len();
    let mut best: Option<(Vec3, f64)> = None;
    let mut idx = Vec::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() > 4 {
            continue;
        }
        idx.clear();
        idx.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| points[i]));
        let Some(c) = circumcenter(&idx) else {
            continue;
        };
        let r = idx.iter().map(|p| (p - c).norm()).fold(0.0, f64::max);
        if best.is_some_and(|(_, br)| br <= r) {
            continue;
        }
        if points
            .iter()
            .all(|p| (p - c).norm() <= r * (1.0 + 1e-10) + 1e-12)
        {
            best = Some((c, r));
        }
    }
    best.expect("some support set always encloses")
}

// ---------------------------------------------------------------------------
// Icosphere face-center radius from the subdivision geometry: a level-L
// icosphere edge subtends roughly atan(2)/2^L; an inscribed triangle with
// edge chord a has its centroid at sqrt(1 - a²/3) (equilateral case).

pub fn icosphere_face_center_radius(level: u32) -> f64 {
    let angle = 2f64.atan() / 2f64.powi(level as i32);
    let chord = 2.0 * (angle / 2.0).sin();
    (1.0 - chord * chord / 3.0).sqrt()
}

// ---------------------------------------------------------------------------
// Zernike moments by supersampled integration of a piecewise-constant image.
// The basis uses (x - iy)^m / ρ^m instead of angles, and its own radial sum.

fn fact(n: usize) -> f64 {
    (2..=n).fold(1.0, |a, k| a * k as f64)
}

fn radial(n: usize, m: usize, rho: f64) -> f64 {
    let mut sum = 0.0;
    for s in 0..=(n - m) / 2 {
        let term = fact(n - s) / (fact(s) * fact((n + m) / 2 - s) * fact((n - m) / 2 - s));
        sum += if s % 2 == 1 { -term } else { term } * rho.powi((n - 2 * s) as i32);
    }
    sum
}

pub fn zernike_pairs() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for n in 0..=10 {
        for m in 0..=n {
            if (n - m) % 2 == 0 {
                v.push((n, m));
            }
        }
    }
    v
}

/// `|A_nm|` integrating each pixel with `sub × sub` samples.
pub fn supersampled_zernike(image: &[f64], res: usize, sub: usize) -> Vec<f64> {
    let pairs = zernike_pairs();
    let mut acc = vec![Complex64::new(0.0, 0.0); pairs.len()];
    let fine = res * sub;
    let h = 2.0 / fine as f64;
    let da = h * h;
    for fy in 0..fine {
        let y = 1.0 - (fy as f64 + 0.5) * h;
        for fx in 0..fine {
            let x = -1.0 + (fx as f64 + 0.5) * h;
            let rho = (x * x + y * y).sqrt();
            if rho > 1.0 {
                continue;
            }
            let f = image[(fy / sub) * res + fx / sub];
            if f == 0.0 {
                continue;
            }
            let unit = if rho > 0.0 {
                Complex64::new(x / rho, -y / rho)
            } else {
                Complex64::new(1.0, 0.0)
            };
            for (a, &(n, m)) in acc.iter_mut().zip(&pairs) {
                let w = (n as f64 + 1.0) / std::f64::consts::PI * da * radial(n, m, rho);
                *a += unit.powu(m as u32) * (w * f);
            }
        }
    }
    acc.iter().map(|a| a.norm()).collect()
}

/// Rotates a row-major square image by 90° counter-clockwise.
pub fn rotate90(image: &[f64], res: usize) -> Vec<f64> {
    let mut out = vec![0.0; image.len()];
    for r in 0..res {
        for c in 0..res {
            out[(res - 1 - c) * res + r] = image[r * res + c];
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Ray-cast renderer: one orthographic ray per pixel center, nearest hit wins,
// gray interpolated with the hit's barycentric coordinates (Möller–Trumbore).

pub struct Frame {
    pub right: Vec3,
    pub up: Vec3,
    pub toward: Vec3,
}

pub fn camera_frame(camera: Vec3) -> Frame {
    let toward = camera / camera.norm();
    let hint = if camera.x == 0.0 && camera.z == 0.0 {
        Vec3::new(0.0, 0.0, 1.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    let up = (hint - toward * hint.dot(&toward)).normalize();
    Frame {
        right: up.cross(&toward),
        up,
        toward,
    }
}

fn ray_triangle(orig: Vec3, dir: Vec3, a: Vec3, b: Vec3, c: Vec3) -> Option<(f64, f64, f64)> {
    let e1 = b - a;
    let e2 = c - a;
    let p = dir.cross(&e2);
    let det = e1.dot(&p);
    if det.abs() < 1e-14 {
        return None;
    }
    let inv = 1.0 / det;
    let s = orig - a;
    let u = s.dot(&p) * inv;
    if !(-1e-12..=1.0 + 1e-12).contains(&u) {
        return None;
    }
    let q = s.cross(&e1);
    let v = dir.dot(&q) * inv;
    if v < -1e-12 || u + v > 1.0 + 1e-12 {
        return None;
    }
    Some((e2.dot(&q) * inv, u, v))
}

pub fn ray_cast(
    vertices: &[Vec3],
    faces: &[[usize; 3]],
    grays: &[f64],
    camera: Vec3,
    res: usize,
) -> Vec<f64> {
    let f = camera_frame(camera);
    let mut best_t = vec![f64::INFINITY; res * res];
    let mut image = vec![0.0; res * res];
    let h = 2.0 / res as f64;
    for tri in faces {
        let [a, b, c] = tri.map(|i| vertices[i]);
        // Candidate pixels: bounding box of the projected triangle.
        let xs = [a, b, c].map(|p| p.dot(&f.right));
        let ys = [a, b, c].map(|p| p.dot(&f.up));
        let col_lo = (((xs.iter().cloned().fold(f64::INFINITY, f64::min) + 1.0) / h) - 1.0)
            .floor()
            .max(0.0) as usize;
        let col_hi = ((((xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.0) / h) + 1.0)
            .ceil() as usize)
            .min(res - 1);
        let row_lo = (((1.0 - ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max)) / h) - 1.0)
            .floor()
            .max(0.0) as usize;
        let row_hi = ((((1.0 - ys.iter().cloned().fold(f64::INFINITY, f64::min)) / h) + 1.0).ceil()
            as usize)
            .min(res - 1);
        for row in row_lo..=row_hi {
            for col in col_lo..=col_hi {
                let x = -1.0 + (col as f64 + 0.5) * h;
                let y = 1.0 - (row as f64 + 0.5) * h;
                let orig = f.right * x + f.up * y + f.toward * 3.0;
                if let Some((t, u, v)) = ray_triangle(orig, -f.toward, a, b, c) {
                    let idx = row * res + col;
                    if t < best_t[idx] {
                        best_t[idx] = t;
                        image[idx] =
                            (1.0 - u - v) * grays[tri[0]] + u * grays[tri[1]] + v * grays[tri[2]];
                    }
                }
            }
        }
    }
    image
}

/// Fraction of pixels whose values agree within `tol`.
pub fn agreement(a: &[f64], b: &[f64], tol: f64) -> f64 {
    let ok = a
        .iter()
        .zip(b)
        .filter(|(x, y)| (*x - *y).abs() <= tol)
        .count();
    ok as f64 / a.len() as f64
}

// ---------------------------------------------------------------------------
// Precision-recall by direct counting: for each recall level r, scan every
// cutoff k and keep the best precision among those reaching recall ≥ r.

pub fn brute_force_pr(ranking_without_query: &[bool], relevant: usize, levels: usize) -> Vec<f64> {
    (1..=levels)
        .map(|l| {
            let r = l as f64 / levels as f64;
            let mut best: f64 = 0.0;
            for k in 1..=ranking_without_query.len() {
                let rel = ranking_without_query[..k].iter().filter(|&&x| x).count();
                if rel as f64 / relevant as f64 >= r - 1e-12 {
                    best = best.max(rel as f64 / k as f64);
                }
            }
            best
        })
        .collect()
}

/// Expected AP of a uniformly random ranking by Monte-Carlo simulation.
pub fn random_ranking_ap(
    total: usize,
    class_size: usize,
    levels: usize,
    trials: usize,
    seed: u64,
) -> f64 {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut items: Vec<bool> = (0..total - 1).map(|i| i < class_size - 1).collect();
    let mut sum = 0.0;
    for _ in 0..trials {
        items.shuffle(&mut rng);
        let pr = brute_force_pr(&items, class_size - 1, levels);
        sum += pr.iter().sum::<f64>() / levels as f64;
    }
    sum / trials as f64
}
