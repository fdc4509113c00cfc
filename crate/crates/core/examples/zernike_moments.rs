//! Zernike magnitudes of a synthetic image, and their invariance under a
//! quarter turn of the pixel grid.
//!
//! `cargo run --example zernike_moments`

use radial_retrieval::raster::pixel_center;
use radial_retrieval::zernike::{moment_orders, zernike_magnitudes, MAX_ORDER};

fn main() -> radial_retrieval::Result<()> {
    let r = 128;
    // An off-center bright blob on a dim ring.
    let image: Vec<f64> = (0..r * r)
        .map(|i| {
            let (x, y) = pixel_center(i % r, i / r, r);
            let blob = (-((x - 0.3).powi(2) + (y - 0.2).powi(2)) / 0.02).exp();
            let ring = if (0.6..0.8).contains(&(x * x + y * y).sqrt()) {
                0.3
            } else {
                0.0
            };
            blob + ring
        })
        .collect();
    let mut turned = vec![0.0; r * r];
    for row in 0..r {
        for col in 0..r {
            turned[(r - 1 - col) * r + row] = image[row * r + col];
        }
    }

    let a = zernike_magnitudes(&image, r, r)?;
    let b = zernike_magnitudes(&turned, r, r)?;
    println!("  n  m      |A_nm|   rotated");
    for ((n, m), (x, y)) in moment_orders(MAX_ORDER).into_iter().zip(a.iter().zip(&b)) {
        println!("{n:3}{m:3}  {x:10.6}{y:10.6}");
    }
    let worst = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    println!("largest change under rotation: {worst:.1e}");
    Ok(())
}
