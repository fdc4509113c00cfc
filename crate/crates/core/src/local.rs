//! Local radial distances, rendered feature views and the 13×36 local descriptor.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::mesh::{NormalizedMesh, Vec3};
use crate::raster::{render_view, FeatureView};
use crate::zernike::{ZernikeBasis, MOMENT_COUNT};

/// Gray value of a surface point at zero local distance. Keeps the
/// foreground distinguishable from the zero background.
pub const GRAY_EPSILON: f64 = 0.05;

/// The 13 camera positions on the bounding cube: 4 top corners, 3 face
/// centers, 6 edge midpoints. Row order of [`LocalDescriptor`].
pub const CAMERAS: [[f64; 3]; 13] = [
    [1.0, 1.0, 1.0],
    [-1.0, 1.0, 1.0],
    [-1.0, -1.0, 1.0],
    [1.0, -1.0, 1.0],
    [1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0],
    [1.0, 0.0, -1.0],
    [0.0, 1.0, -1.0],
    [1.0, 1.0, 0.0],
    [0.0, 1.0, 1.0],
    [1.0, 0.0, 1.0],
    [1.0, -1.0, 0.0],
];

pub fn camera(index: usize) -> Vec3 {
    Vec3::from(CAMERAS[index])
}

/// Centers of the N×N×N sub-cubes of [-1, 1]³.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGrid {
    n: usize,
    centers: Vec<Vec3>,
}

impl LocalGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config(
                "local grid needs at least one subdivision".into(),
            ));
        }
        let coord = |i: usize| (2.0 * i as f64 - n as f64 - 1.0) / n as f64;
        let mut centers = Vec::with_capacity(n * n * n);
        for x in 1..=n {
            for y in 1..=n {
                for z in 1..=n {
                    centers.push(Vec3::new(coord(x), coord(y), coord(z)));
                }
            }
        }
        Ok(Self { n, centers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn centers(&self) -> &[Vec3] {
        &self.centers
    }

    /// Largest possible nearest-center distance: half a sub-cube diagonal.
    pub fn max_distance(&self) -> f64 {
        3f64.sqrt() / self.n as f64
    }

    /// Index of the nearest center; the lowest index wins ties.
    pub fn nearest(&self, v: &Vec3) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, c) in self.centers.iter().enumerate() {
            let d = (v - c).norm_squared();
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }
}

impl Default for LocalGrid {
    fn default() -> Self {
        Self::new(3).unwrap()
    }
}

pub fn local_grid(n: usize) -> Result<LocalGrid> {
    LocalGrid::new(n)
}

pub fn vertex_local_distance(v: &Vec3, grid: &LocalGrid) -> f64 {
    (v - grid.centers[grid.nearest(v)]).norm()
}

/// Affine map of `[0, √3/N]` onto `[ε, 1]`.
pub fn gray_encode(d: f64, n: usize) -> f64 {
    GRAY_EPSILON + (1.0 - GRAY_EPSILON) * d * n as f64 / 3f64.sqrt()
}

/// Per-vertex gray values of a normalized mesh.
pub fn vertex_grays(mesh: &NormalizedMesh, grid: &LocalGrid) -> Vec<f64> {
    mesh.vertices()
        .iter()
        .map(|v| gray_encode(vertex_local_distance(v, grid), grid.n()).min(1.0))
        .collect()
}

/// 13×36 matrix of Zernike magnitudes, one row per camera.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalDescriptor {
    pub values: Array2<f64>,
}

/// Renders all 13 feature views.
pub fn feature_views(
    mesh: &NormalizedMesh,
    grid: &LocalGrid,
    resolution: usize,
) -> Result<Vec<FeatureView>> {
    let grays = vertex_grays(mesh, grid);
    (0..CAMERAS.len())
        .map(|v| render_view(mesh, &grays, &camera(v), resolution))
        .collect()
}

pub fn local_descriptor(
    mesh: &NormalizedMesh,
    grid: &LocalGrid,
    resolution: usize,
) -> Result<LocalDescriptor> {
    let basis = ZernikeBasis::for_resolution(resolution)?;
    local_descriptor_with(mesh, grid, &basis)
}

pub fn local_descriptor_with(
    mesh: &NormalizedMesh,
    grid: &LocalGrid,
    basis: &ZernikeBasis,
) -> Result<LocalDescriptor> {
    let views = feature_views(mesh, grid, basis.resolution())?;
    let mut values = Array2::zeros((CAMERAS.len(), MOMENT_COUNT));
    for (row, view) in views.iter().enumerate() {
        let m = basis.magnitudes(view)?;
        values
            .row_mut(row)
            .assign(&ndarray::ArrayView1::from(&m[..]));
    }
    Ok(LocalDescriptor { values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_coordinates() {
        assert_eq!(local_grid(1).unwrap().centers(), &[Vec3::zeros()]);
        let g2 = local_grid(2).unwrap();
        assert_eq!(g2.centers().len(), 8);
        assert!(g2
            .centers()
            .iter()
            .flat_map(|c| c.iter())
            .all(|&x| x == 0.5 || x == -0.5));
        let g3 = local_grid(3).unwrap();
        assert_eq!(g3.centers().len(), 27);
        let allowed = [-2.0 / 3.0, 0.0, 2.0 / 3.0];
        assert!(g3
            .centers()
            .iter()
            .flat_map(|c| c.iter())
            .all(|x| allowed.contains(x)));
        assert_eq!(g3.centers()[0], Vec3::from([-2.0 / 3.0; 3]));
        assert_eq!(g3.centers()[1], Vec3::new(-2.0 / 3.0, -2.0 / 3.0, 0.0));
        assert!(local_grid(0).is_err());
    }

    #[test]
    fn local_distances() {
        let g = LocalGrid::default();
        assert_eq!(vertex_local_distance(&Vec3::zeros(), &g), 0.0);
        let d = vertex_local_distance(&Vec3::new(1.0, 1.0, 1.0), &g);
        assert!((d - 3f64.sqrt() / 3.0).abs() < 1e-15);
        let v = Vec3::new(1.0 / 3.0, 0.0, 0.0);
        assert!((vertex_local_distance(&v, &g) - 1.0 / 3.0).abs() < 1e-15);
        // Tie between (0,0,0) and (2/3,0,0): lower index wins.
        let i = g.nearest(&v);
        assert_eq!(g.centers()[i], Vec3::zeros());
    }

    #[test]
    fn gray_anchors() {
        for n in 1..5 {
            assert_eq!(gray_encode(0.0, n), 0.05);
            assert!((gray_encode(3f64.sqrt() / n as f64, n) - 1.0).abs() < 1e-15);
            assert!((gray_encode(3f64.sqrt() / (2.0 * n as f64), n) - 0.525).abs() < 1e-15);
        }
    }

    #[test]
    fn camera_list() {
        assert_eq!(CAMERAS.len(), 13);
        let corners = CAMERAS
            .iter()
            .filter(|c| c.iter().all(|x| x.abs() == 1.0))
            .count();
        let faces = CAMERAS
            .iter()
            .filter(|c| c.iter().filter(|x| **x != 0.0).count() == 1)
            .count();
        let edges = CAMERAS
            .iter()
            .filter(|c| c.iter().filter(|x| **x != 0.0).count() == 2)
            .count();
        assert_eq!((corners, faces, edges), (4, 3, 6));
    }
}
