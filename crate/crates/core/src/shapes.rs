//! Procedural test meshes: icospheres, boxes and surfaces of revolution.

use std::collections::HashMap;

use crate::mesh::{Mesh, Vec3};

/// Unit icosphere after `level` rounds of 4-way subdivision
/// (20·4^level faces, vertices projected onto the sphere).
pub fn icosphere(level: u32) -> Mesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<Vec3> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .iter()
    .map(|p| Vec3::from(*p).normalize())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let (v, f) = split_faces(&vertices, &faces, true);
        vertices = v;
        faces = f;
    }
    Mesh::new("icosphere", vertices, faces).expect("indices are consistent")
}

fn split_faces(
    vertices: &[Vec3],
    faces: &[[usize; 3]],
    project: bool,
) -> (Vec<Vec3>, Vec<[usize; 3]>) {
    let mut vertices = vertices.to_vec();
    let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
    let mut mid = |a: usize, b: usize, vertices: &mut Vec<Vec3>| {
        *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
            let m = (vertices[a] + vertices[b]) * 0.5;
            vertices.push(if project { m.normalize() } else { m });
            vertices.len() - 1
        })
    };
    let mut out = Vec::with_capacity(faces.len() * 4);
    for &[a, b, c] in faces {
        let ab = mid(a, b, &mut vertices);
        let bc = mid(b, c, &mut vertices);
        let ca = mid(c, a, &mut vertices);
        out.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
    }
    (vertices, out)
}

/// Planar midpoint subdivision: every triangle becomes four.
pub fn subdivide(mesh: &Mesh) -> Mesh {
    let (v, f) = split_faces(mesh.vertices(), mesh.faces(), false);
    Mesh::new(mesh.id.clone(), v, f).expect("indices are consistent")
}

/// Surface of the cube `[-1, 1]³` with `cells` × `cells` quads per side.
pub fn cube(cells: usize) -> Mesh {
    let s = cells as i64;
    let mut index: HashMap<[i64; 3], usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    let mut vid = |p: [i64; 3], vertices: &mut Vec<Vec3>| {
        *index.entry(p).or_insert_with(|| {
            vertices.push(Vec3::new(
                2.0 * p[0] as f64 / s as f64 - 1.0,
                2.0 * p[1] as f64 / s as f64 - 1.0,
                2.0 * p[2] as f64 / s as f64 - 1.0,
            ));
            vertices.len() - 1
        })
    };
    for axis in 0..3 {
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        for side in [0, s] {
            for i in 0..s {
                for j in 0..s {
                    let corner = |di: i64, dj: i64| {
                        let mut p = [0; 3];
                        p[axis] = side;
                        p[u] = i + di;
                        p[v] = j + dj;
                        p
                    };
                    let q = [corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)]
                        .map(|p| vid(p, &mut vertices));
                    faces.push([q[0], q[1], q[2]]);
                    faces.push([q[0], q[2], q[3]]);
                }
            }
        }
    }
    Mesh::new("cube", vertices, faces).expect("indices are consistent")
}

/// Revolves a profile of `(radius, height)` points around the y axis.
/// Profile points with zero radius collapse to a single pole vertex.
/// `closed` joins the last profile point back to the first.
pub fn revolve(profile: &[(f64, f64)], segments: usize, closed: bool) -> Mesh {
    let mut vertices = Vec::new();
    let mut rings: Vec<Vec<usize>> = Vec::with_capacity(profile.len());
    for &(r, y) in profile {
        if r == 0.0 {
            vertices.push(Vec3::new(0.0, y, 0.0));
            rings.push(vec![vertices.len() - 1; segments]);
        } else {
            let ring = (0..segments)
                .map(|k| {
                    let a = std::f64::consts::TAU * k as f64 / segments as f64;
                    vertices.push(Vec3::new(r * a.cos(), y, r * a.sin()));
                    vertices.len() - 1
                })
                .collect();
            rings.push(ring);
        }
    }
    let mut faces = Vec::new();
    let strips = if closed {
        profile.len()
    } else {
        profile.len() - 1
    };
    for p in 0..strips {
        let (lo, hi) = (&rings[p], &rings[(p + 1) % profile.len()]);
        for k in 0..segments {
            let k1 = (k + 1) % segments;
            let tris = [[lo[k], lo[k1], hi[k1]], [lo[k], hi[k1], hi[k]]];
            for t in tris {
                if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
                    faces.push(t);
                }
            }
        }
    }
    Mesh::new("revolved", vertices, faces).expect("indices are consistent")
}

/// Closed cylinder of the given radius and half-height along y.
pub fn cylinder(radius: f64, half_height: f64, segments: usize, rings: usize) -> Mesh {
    let mut profile = Vec::new();
    for i in 0..rings {
        profile.push((radius * i as f64 / rings as f64, -half_height));
    }
    for i in 0..=rings {
        profile.push((
            radius,
            -half_height + 2.0 * half_height * i as f64 / rings as f64,
        ));
    }
    for i in (0..rings).rev() {
        profile.push((radius * i as f64 / rings as f64, half_height));
    }
    let mut m = revolve(&profile, segments, false);
    m.id = "cylinder".into();
    m
}

/// Torus around the y axis.
pub fn torus(major: f64, minor: f64, segments: usize, tube_segments: usize) -> Mesh {
    let profile: Vec<(f64, f64)> = (0..tube_segments)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / tube_segments as f64;
            (major + minor * a.cos(), minor * a.sin())
        })
        .collect();
    let mut m = revolve(&profile, segments, true);
    m.id = "torus".into();
    m
}
