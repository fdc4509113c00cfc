//! Area-weighted global radial-distance histogram over the spherical angle space.
//!
//! The polar angle φ is measured from the +y axis, the azimuth θ is
//! `atan2(z, x)` in the xz-plane mapped to [0°, 360°). Each bin stores the
//! area-weighted mean distance of the face centers falling into it.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::mesh::{FaceGeometry, Vec3};

/// Uniform partition of (φ, θ) into `rows × cols` bins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinGrid {
    delta_phi: f64,
    delta_theta: f64,
    rows: usize,
    cols: usize,
}

impl Default for BinGrid {
    fn default() -> Self {
        Self::new(30.0, 30.0).expect("30 degrees divides both ranges")
    }
}

fn divisions(range: f64, step: f64, name: &str) -> Result<usize> {
    if !(step > 0.0 && step <= range) {
        return Err(Error::Config(format!(
            "{name} must be in (0, {range}], got {step}"
        )));
    }
    let n = (range / step).round();
    if (n * step - range).abs() > 1e-9 {
        return Err(Error::Config(format!(
            "{name} = {step} does not divide {range}"
        )));
    }
    Ok(n as usize)
}

impl BinGrid {
    /// Steps are in degrees and must divide 180 and 360 exactly.
    pub fn new(delta_phi: f64, delta_theta: f64) -> Result<Self> {
        Ok(Self {
            rows: divisions(180.0, delta_phi, "delta-phi")?,
            cols: divisions(360.0, delta_theta, "delta-theta")?,
            delta_phi,
            delta_theta,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn delta_phi(&self) -> f64 {
        self.delta_phi
    }

    pub fn delta_theta(&self) -> f64 {
        self.delta_theta
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Spherical angles `(φ, θ)` in degrees of a non-zero direction.
pub fn spherical_angles(d: &Vec3) -> Result<(f64, f64)> {
    let norm = d.norm();
    if norm.is_nan() || norm <= 1e-12 {
        return Err(Error::InvalidInput("direction of a zero vector".into()));
    }
    let u = d / norm;
    let phi = u.y.clamp(-1.0, 1.0).acos().to_degrees();
    let theta = if u.x == 0.0 && u.z == 0.0 {
        0.0
    } else {
        let t = u.z.atan2(u.x).to_degrees();
        if t < 0.0 {
            t + 360.0
        } else {
            t
        }
    };
    Ok((phi, theta))
}

pub fn bin_index(direction: &Vec3, grid: &BinGrid) -> Result<(usize, usize)> {
    let (phi, theta) = spherical_angles(direction)?;
    let i = ((phi / grid.delta_phi).floor() as usize).min(grid.rows - 1);
    // -0.0 + 360 rounds to exactly 360 for tiny negative angles.
    let j = ((theta / grid.delta_theta).floor() as usize).min(grid.cols - 1);
    Ok((i, j))
}

/// `rows × cols` matrix of area-weighted mean radial distances.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalDescriptor {
    pub values: Array2<f64>,
}

pub fn global_descriptor(geom: &FaceGeometry, grid: &BinGrid) -> GlobalDescriptor {
    let mut weighted = Array2::<f64>::zeros((grid.rows, grid.cols));
    let mut area = Array2::<f64>::zeros((grid.rows, grid.cols));
    // Faces are visited in index order so sums are reproducible.
    for k in 0..geom.len() {
        if geom.is_degenerate(k) {
            continue;
        }
        let c = &geom.centers[k];
        let Ok(bin) = bin_index(c, grid) else {
            continue;
        };
        weighted[bin] += c.norm() * geom.areas[k];
        area[bin] += geom.areas[k];
    }
    let values = ndarray::Zip::from(&weighted)
        .and(&area)
        .map_collect(|&w, &a| if a > 0.0 { w / a } else { 0.0 });
    GlobalDescriptor { values }
}
