//! Orthographic, depth-buffered software rasterizer with Gouraud-interpolated
//! vertex grays.
//!
//! The view window is the square `[-1, 1]²` in camera coordinates, so a
//! normalized model always projects into the disk inscribed in the image.
//! No back-face culling: every triangle is depth tested.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::local::CAMERAS;
use crate::mesh::{NormalizedMesh, Vec3};

/// Orthonormal camera frame: image x axis, image y axis, and the unit vector
/// pointing from the origin towards the camera (depth grows towards the camera).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViewFrame {
    pub right: Vec3,
    pub up: Vec3,
    pub toward: Vec3,
}

impl ViewFrame {
    pub fn looking_from(camera: &Vec3) -> Self {
        let toward = camera.normalize();
        let up_hint = if toward.x == 0.0 && toward.z == 0.0 {
            Vec3::z()
        } else {
            Vec3::y()
        };
        let up = (up_hint - toward * up_hint.dot(&toward)).normalize();
        let right = up.cross(&toward);
        Self { right, up, toward }
    }

    /// `(x, y, depth)` of a world point.
    pub fn project(&self, p: &Vec3) -> (f64, f64, f64) {
        (p.dot(&self.right), p.dot(&self.up), p.dot(&self.toward))
    }
}

/// Maps a pixel index to the x (column) or y (row) coordinate of its center in `[-1, 1]`.
pub fn pixel_center(col: usize, row: usize, resolution: usize) -> (f64, f64) {
    let h = 2.0 / resolution as f64;
    (-1.0 + (col as f64 + 0.5) * h, 1.0 - (row as f64 + 0.5) * h)
}

/// Square grayscale image; `0.0` is background.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureView {
    resolution: usize,
    pixels: Vec<f64>,
    pub camera: Vec3,
}

impl FeatureView {
    pub fn from_pixels(resolution: usize, pixels: Vec<f64>, camera: Vec3) -> Result<Self> {
        if pixels.len() != resolution * resolution {
            return Err(Error::InvalidInput(format!(
                "{} pixels do not form a {resolution}x{resolution} image",
                pixels.len()
            )));
        }
        Ok(Self {
            resolution,
            pixels,
            camera,
        })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, col: usize, row: usize) -> f64 {
        self.pixels[row * self.resolution + col]
    }

    pub fn foreground_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p > 0.0).count()
    }

    /// Binary PGM (P5, maxval 255).
    pub fn write_pgm(&self, mut w: impl Write) -> std::io::Result<()> {
        write!(w, "P5\n{} {}\n255\n", self.resolution, self.resolution)?;
        let bytes: Vec<u8> = self
            .pixels
            .iter()
            .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
            .collect();
        w.write_all(&bytes)
    }

    pub fn save_pgm(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_pgm(std::io::BufWriter::new(f))
            .map_err(|e| Error::io(path, e))
    }
}

fn edge(ax: f64, ay: f64, bx: f64, by: f64, px: f64, py: f64) -> f64 {
    (bx - ax) * (py - ay) - (by - ay) * (px - ax)
}

/// Renders one feature view. `camera` must be one of [`CAMERAS`].
pub fn render_view(
    mesh: &NormalizedMesh,
    grays: &[f64],
    camera: &Vec3,
    resolution: usize,
) -> Result<FeatureView> {
    if !CAMERAS.iter().any(|c| Vec3::from(*c) == *camera) {
        return Err(Error::InvalidInput(format!(
            "camera {camera:?} is not one of the 13 canonical positions"
        )));
    }
    if grays.len() != mesh.vertices().len() {
        return Err(Error::InvalidInput(format!(
            "{} gray values for {} vertices",
            grays.len(),
            mesh.vertices().len()
        )));
    }
    if resolution == 0 {
        return Err(Error::Config("resolution must be positive".into()));
    }
    let frame = ViewFrame::looking_from(camera);
    let mut image = vec![0.0; resolution * resolution];
    let mut depth = vec![f64::NEG_INFINITY; resolution * resolution];
    rasterize(mesh, grays, &frame, resolution, &mut image, &mut depth);
    FeatureView::from_pixels(resolution, image, *camera)
}

/// Renders from an arbitrary frame. Used by tests and debugging tools that
/// need views outside the canonical set.
pub fn render_frame(
    mesh: &NormalizedMesh,
    grays: &[f64],
    frame: &ViewFrame,
    resolution: usize,
) -> Vec<f64> {
    let mut image = vec![0.0; resolution * resolution];
    let mut depth = vec![f64::NEG_INFINITY; resolution * resolution];
    rasterize(mesh, grays, frame, resolution, &mut image, &mut depth);
    image
}

fn rasterize(
    mesh: &NormalizedMesh,
    grays: &[f64],
    frame: &ViewFrame,
    resolution: usize,
    image: &mut [f64],
    depth: &mut [f64],
) {
    let half = resolution as f64 * 0.5;
    // Pixel-space coordinates: pixel (c, r) has its center at (c + 0.5, r + 0.5).
    let screen: Vec<(f64, f64, f64)> = mesh
        .vertices()
        .iter()
        .map(|v| {
            let (x, y, z) = frame.project(v);
            ((x + 1.0) * half, (1.0 - y) * half, z)
        })
        .collect();
    let max_index = resolution as f64 - 1.0;

    for face in mesh.faces() {
        let [a, b, c] = face.map(|i| screen[i]);
        let area = edge(a.0, a.1, b.0, b.1, c.0, c.1);
        if area.abs() < 1e-12 {
            continue;
        }
        let inv_area = 1.0 / area;
        let [ga, gb, gc] = face.map(|i| grays[i]);

        let min_x = a.0.min(b.0).min(c.0) - 0.5;
        let max_x = a.0.max(b.0).max(c.0) - 0.5;
        let min_y = a.1.min(b.1).min(c.1) - 0.5;
        let max_y = a.1.max(b.1).max(c.1) - 0.5;
        if max_x < 0.0 || max_y < 0.0 || min_x > max_index || min_y > max_index {
            continue;
        }
        let c0 = min_x.ceil().max(0.0) as usize;
        let c1 = max_x.floor().min(max_index) as usize;
        let r0 = min_y.ceil().max(0.0) as usize;
        let r1 = max_y.floor().min(max_index) as usize;

        for row in r0..=r1 {
            let py = row as f64 + 0.5;
            for col in c0..=c1 {
                let px = col as f64 + 0.5;
                let wa = edge(b.0, b.1, c.0, c.1, px, py) * inv_area;
                let wb = edge(c.0, c.1, a.0, a.1, px, py) * inv_area;
                let wc = edge(a.0, a.1, b.0, b.1, px, py) * inv_area;
                if wa < 0.0 || wb < 0.0 || wc < 0.0 {
                    continue;
                }
                let z = wa * a.2 + wb * b.2 + wc * c.2;
                let idx = row * resolution + col;
                if z > depth[idx] {
                    depth[idx] = z;
                    image[idx] = wa * ga + wb * gb + wc * gc;
                }
            }
        }
    }
}
