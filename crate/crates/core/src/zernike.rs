//! Zernike moment magnitudes over the disk inscribed in a square image.
//!
//! `A_nm = (n+1)/π · Σ f(x,y) · conj(V_nm(ρ,θ)) · ΔA`, with pixel centers
//! mapped to `[-1, 1]²`, `ΔA = (2/R)²`, and only pixels with `ρ ≤ 1` summed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::raster::{pixel_center, FeatureView};

pub const MAX_ORDER: usize = 10;
pub const MOMENT_COUNT: usize = 36;

/// Valid `(n, m)` pairs for `n ≤ max_order`, `m ≥ 0`, `n − m` even, sorted by n then m.
pub fn moment_orders(max_order: usize) -> Vec<(usize, usize)> {
    (0..=max_order)
        .flat_map(|n| (n % 2..=n).step_by(2).map(move |m| (n, m)))
        .collect()
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Zernike radial polynomial `R_nm(ρ)`.
pub fn radial_polynomial(n: usize, m: usize, rho: f64) -> f64 {
    debug_assert!(m <= n && (n - m).is_multiple_of(2));
    (0..=(n - m) / 2)
        .map(|s| {
            let c = factorial(n - s)
                / (factorial(s) * factorial((n + m) / 2 - s) * factorial((n - m) / 2 - s));
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            sign * c * rho.powi((n - 2 * s) as i32)
        })
        .sum()
}

/// Precomputed conjugate basis values for one image resolution. Shared
/// read-only between renders.
#[derive(Debug, Clone)]
pub struct ZernikeBasis {
    resolution: usize,
    orders: Vec<(usize, usize)>,
    /// Row-major pixel indices inside the unit disk.
    pixels: Vec<usize>,
    /// `(n+1)/π · ΔA · conj(V_nm)` per in-disk pixel, moment-minor.
    weights: Vec<Complex64>,
}

impl ZernikeBasis {
    pub fn new(resolution: usize, max_order: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::Config("resolution must be positive".into()));
        }
        let orders = moment_orders(max_order);
        let cell = (2.0 / resolution as f64).powi(2);
        let mut pixels = Vec::new();
        let mut weights = Vec::new();
        for row in 0..resolution {
            for col in 0..resolution {
                let (x, y) = pixel_center(col, row, resolution);
                let rho = x.hypot(y);
                if rho > 1.0 {
                    continue;
                }
                let theta = y.atan2(x);
                pixels.push(row * resolution + col);
                for &(n, m) in &orders {
                    let scale = (n as f64 + 1.0) / std::f64::consts::PI * cell;
                    let conj = Complex64::from_polar(1.0, -(m as f64) * theta);
                    weights.push(conj * (scale * radial_polynomial(n, m, rho)));
                }
            }
        }
        Ok(Self {
            resolution,
            orders,
            pixels,
            weights,
        })
    }

    /// Basis for the default order (10, 36 moments).
    pub fn for_resolution(resolution: usize) -> Result<Self> {
        Self::new(resolution, MAX_ORDER)
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn orders(&self) -> &[(usize, usize)] {
        &self.orders
    }

    /// Complex moments of a row-major `R × R` image.
    pub fn moments(&self, image: &[f64]) -> Result<Vec<Complex64>> {
        if image.len() != self.resolution * self.resolution {
            return Err(Error::InvalidInput(format!(
                "image has {} pixels, basis expects {}x{}",
                image.len(),
                self.resolution,
                self.resolution
            )));
        }
        let k = self.orders.len();
        let mut acc = vec![Complex64::new(0.0, 0.0); k];
        for (p, w) in self.pixels.iter().zip(self.weights.chunks_exact(k)) {
            let f = image[*p];
            if f == 0.0 {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(w) {
                *a += b * f;
            }
        }
        Ok(acc)
    }

    pub fn magnitudes(&self, view: &FeatureView) -> Result<Vec<f64>> {
        Ok(self
            .moments(view.pixels())?
            .iter()
            .map(|a| a.norm())
            .collect())
    }
}

/// Magnitudes `|A_nm|` for the 36 moments of order ≤ 10 of a `width × height`
/// image. Builds a fresh basis; prefer [`ZernikeBasis`] for repeated use.
pub fn zernike_magnitudes(image: &[f64], width: usize, height: usize) -> Result<Vec<f64>> {
    if width != height {
        return Err(Error::InvalidInput(format!(
            "Zernike moments need a square image, got {width}x{height}"
        )));
    }
    let basis = ZernikeBasis::for_resolution(width)?;
    Ok(basis.moments(image)?.iter().map(|a| a.norm()).collect())
}
