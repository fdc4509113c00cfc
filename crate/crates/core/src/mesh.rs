//! Triangle meshes, OFF/OBJ readers and bounding-sphere normalization.

use std::path::Path;

use nalgebra::Vector3;

use crate::ball::{min_enclosing_ball, Ball};
use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Faces with an area below this are treated as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-12;

/// Indexed triangle mesh. Polygons are fan-triangulated when parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub id: String,
    vertices: Vec<Vec3>,
    faces: Vec<[usize; 3]>,
}

impl Mesh {
    /// Builds a mesh, checking that every face index refers to a vertex.
    pub fn new(id: impl Into<String>, vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Result<Self> {
        let n = vertices.len();
        if let Some((k, f)) = faces
            .iter()
            .enumerate()
            .find(|(_, f)| f.iter().any(|&i| i >= n))
        {
            return Err(Error::InvalidInput(format!(
                "face {k} {f:?} index out of range for {n} vertices"
            )));
        }
        Ok(Self {
            id: id.into(),
            vertices,
            faces,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn triangle(&self, k: usize) -> [Vec3; 3] {
        let [a, b, c] = self.faces[k];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Applies `f` to every vertex, keeping connectivity.
    pub fn map_vertices(&self, f: impl Fn(&Vec3) -> Vec3) -> Mesh {
        Mesh {
            id: self.id.clone(),
            vertices: self.vertices.iter().map(f).collect(),
            faces: self.faces.clone(),
        }
    }

    /// Loads an `.off` or `.obj` file; the model id is the file stem.
    pub fn load(path: &Path) -> Result<Mesh> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let ext = path
            .extension()
            .map(|e| e.to_string_lossy().to_ascii_lowercase());
        let mut mesh = match ext.as_deref() {
            Some("off") => parse_off(&bytes),
            Some("obj") => parse_obj(&bytes),
            _ => Err(Error::InvalidInput(format!(
                "{}: unsupported mesh extension",
                path.display()
            ))),
        }?;
        mesh.id = id;
        Ok(mesh)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("non-numeric token {tok:?}")))
}

fn fan(polygon: &[usize], faces: &mut Vec<[usize; 3]>) {
    for i in 1..polygon.len() - 1 {
        faces.push([polygon[0], polygon[i], polygon[i + 1]]);
    }
}

/// Parses ASCII OFF (Princeton convention).
pub fn parse_off(bytes: &[u8]) -> Result<Mesh> {
    let text = String::from_utf8_lossy(bytes);
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty file, expected OFF header"))?;
    let rest = header
        .strip_prefix("OFF")
        .ok_or_else(|| Error::parse(header_line, "malformed header, expected \"OFF\""))?;
    // Some writers put the counts on the header line ("OFF 8 6 0").
    let counts: Vec<&str> = if rest.trim().is_empty() {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| Error::parse(header_line, "missing vertex/face counts"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(Error::parse(ln, "malformed counts line"));
        }
        toks
    } else if rest.starts_with(char::is_whitespace) {
        rest.split_whitespace().collect()
    } else {
        return Err(Error::parse(
            header_line,
            "malformed header, expected \"OFF\"",
        ));
    };
    if counts.len() < 2 {
        return Err(Error::parse(header_line, "malformed counts line"));
    }
    let nv: usize = parse_num(counts[0], header_line)?;
    let nf: usize = parse_num(counts[1], header_line)?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, l) = lines.next().ok_or_else(|| {
            Error::parse(
                text.lines().count(),
                "unexpected end of file in vertex list",
            )
        })?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(Error::parse(ln, "vertex needs three coordinates"));
        }
        vertices.push(Vec3::new(
            parse_num(toks[0], ln)?,
            parse_num(toks[1], ln)?,
            parse_num(toks[2], ln)?,
        ));
    }

    let mut faces = Vec::with_capacity(nf);
    let mut polygon = Vec::new();
    for _ in 0..nf {
        let (ln, l) = lines.next().ok_or_else(|| {
            Error::parse(text.lines().count(), "unexpected end of file in face list")
        })?;
        let mut toks = l.split_whitespace();
        let k: usize = parse_num(toks.next().unwrap_or(""), ln)?;
        if k < 3 {
            return Err(Error::parse(ln, format!("face with {k} vertices")));
        }
        polygon.clear();
        for _ in 0..k {
            let tok = toks
                .next()
                .ok_or_else(|| Error::parse(ln, format!("face declares {k} vertices")))?;
            let idx: usize = parse_num(tok, ln)?;
            if idx >= nv {
                return Err(Error::parse(
                    ln,
                    format!("index out of range: {idx} >= {nv}"),
                ));
            }
            polygon.push(idx);
        }
        // Trailing tokens are per-face colors; ignored.
        fan(&polygon, &mut faces);
    }

    Mesh::new("", vertices, faces)
}

/// Parses the `v` and `f` records of a Wavefront OBJ file.
pub fn parse_obj(bytes: &[u8]) -> Result<Mesh> {
    let text = String::from_utf8_lossy(bytes);
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    let mut polygon = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let mut toks = strip_comment(raw).split_whitespace();
        match toks.next() {
            Some("v") => {
                let xyz: Vec<&str> = toks.take(3).collect();
                if xyz.len() < 3 {
                    return Err(Error::parse(ln, "vertex needs three coordinates"));
                }
                vertices.push(Vec3::new(
                    parse_num(xyz[0], ln)?,
                    parse_num(xyz[1], ln)?,
                    parse_num(xyz[2], ln)?,
                ));
            }
            Some("f") => {
                polygon.clear();
                for tok in toks {
                    let head = tok.split('/').next().unwrap_or("");
                    let idx: i64 = parse_num(head, ln)?;
                    let n = vertices.len() as i64;
                    let resolved = match idx {
                        0 => return Err(Error::parse(ln, "OBJ indices are 1-based, got 0")),
                        i if i > 0 => i - 1,
                        i => n + i,
                    };
                    if resolved < 0 || resolved >= n {
                        return Err(Error::parse(ln, format!("index out of range: {idx}")));
                    }
                    polygon.push(resolved as usize);
                }
                if polygon.len() < 3 {
                    return Err(Error::parse(
                        ln,
                        format!("face with {} vertices", polygon.len()),
                    ));
                }
                fan(&polygon, &mut faces);
            }
            _ => {}
        }
    }

    Mesh::new("", vertices, faces)
}

/// A mesh translated and scaled so its minimal enclosing ball is the unit
/// ball at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedMesh {
    mesh: Mesh,
    /// Enclosing ball of the input mesh, i.e. the transform that was undone.
    pub source_ball: Ball,
}

impl NormalizedMesh {
    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn id(&self) -> &str {
        &self.mesh.id
    }

    pub fn vertices(&self) -> &[Vec3] {
        self.mesh.vertices()
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        self.mesh.faces()
    }

    pub fn sphere_center(&self) -> Vec3 {
        Vec3::zeros()
    }

    pub fn sphere_radius(&self) -> f64 {
        1.0
    }
}

/// Translates the enclosing-ball center to the origin and scales its radius to 1.
///
/// No pose alignment is performed; models are assumed to be pre-aligned.
pub fn normalize(mesh: &Mesh) -> Result<NormalizedMesh> {
    if mesh.vertices.len() < 3 {
        return Err(Error::Degenerate(format!(
            "{} vertices, need at least 3",
            mesh.vertices.len()
        )));
    }
    let ball = min_enclosing_ball(&mesh.vertices)?;
    if ball.radius <= 1e-12 {
        return Err(Error::Degenerate("all vertices coincide".into()));
    }
    let inv = 1.0 / ball.radius;
    Ok(NormalizedMesh {
        mesh: mesh.map_vertices(|v| (v - ball.center) * inv),
        source_ball: ball,
    })
}

/// Per-face centroids and areas.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceGeometry {
    pub centers: Vec<Vec3>,
    pub areas: Vec<f64>,
}

impl FaceGeometry {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Faces whose area is below [`DEGENERATE_AREA`] are excluded from area-weighted sums.
    pub fn is_degenerate(&self, k: usize) -> bool {
        self.areas[k] < DEGENERATE_AREA
    }

    pub fn total_area(&self) -> f64 {
        self.areas.iter().filter(|&&a| a >= DEGENERATE_AREA).sum()
    }
}

pub fn face_geometry(mesh: &NormalizedMesh) -> FaceGeometry {
    triangle_geometry(mesh.mesh())
}

pub(crate) fn triangle_geometry(mesh: &Mesh) -> FaceGeometry {
    let (centers, areas) = (0..mesh.faces.len())
        .map(|k| {
            let [a, b, c] = mesh.triangle(k);
            ((a + b + c) / 3.0, (b - a).cross(&(c - a)).norm() * 0.5)
        })
        .unzip();
    FaceGeometry { centers, areas }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_off() {
        let m = parse_off(b"OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2").unwrap();
        assert_eq!(m.vertices().len(), 3);
        assert_eq!(m.faces(), &[[0, 1, 2]]);
    }

    #[test]
    fn off_quad_is_fanned() {
        let m = parse_off(b"OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n").unwrap();
        assert_eq!(m.faces(), &[[0, 1, 2], [0, 2, 3]]);
    }

    #[test]
    fn off_comments_and_blank_lines() {
        let text = b"# leading comment\n\nOFF\n# counts\n3 1 0\n0 0 0 # origin\n\n1 0 0\n0 1 0\n3 0 1 2 255 0 0\n";
        let m = parse_off(text).unwrap();
        assert_eq!(m.faces().len(), 1);
    }

    #[test]
    fn off_counts_on_header_line() {
        let m = parse_off(b"OFF 3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n").unwrap();
        assert_eq!(m.vertices().len(), 3);
    }

    #[test]
    fn off_index_out_of_range() {
        let err = parse_off(b"OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 9").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 6);
                assert!(message.contains("index out of range"), "{message}");
            }
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn off_errors_name_line() {
        let err = parse_off(b"COFF\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_off(b"OFF\n3 1 0\n0 0 0\n1 zero 0\n0 1 0\n3 0 1 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_off(b"OFF\n3 1 0\n0 0 0\n1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn obj_basic_slashes_and_negative() {
        let m = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3").unwrap();
        assert_eq!(m.faces(), &[[0, 1, 2]]);
        let m =
            parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nvt 0 0\nf 1/1/1 2/2/2 3/3/3").unwrap();
        assert_eq!(m.faces(), &[[0, 1, 2]]);
        let m = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1").unwrap();
        assert_eq!(m.faces(), &[[0, 1, 2]]);
        let m = parse_obj(b"v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nusemtl x\nf 1//1 2//1 3//1 4//1")
            .unwrap();
        assert_eq!(m.faces(), &[[0, 1, 2], [0, 2, 3]]);
    }

    #[test]
    fn obj_errors() {
        assert!(matches!(
            parse_obj(b"v 0 0 0\nf 1 2 3").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_obj(b"v 0 0 x\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn face_geometry_analytic() {
        let m = Mesh::new(
            "t",
            vec![
                Vec3::zeros(),
                Vec3::x(),
                Vec3::y(),
                Vec3::new(2.0, 0.0, 0.0),
            ],
            vec![[0, 1, 2], [0, 1, 3]],
        )
        .unwrap();
        let g = triangle_geometry(&m);
        assert!((g.centers[0] - Vec3::new(1.0 / 3.0, 1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert_eq!(g.areas[0], 0.5);
        assert!(!g.is_degenerate(0));
        assert_eq!(g.areas[1], 0.0);
        assert!(g.is_degenerate(1));
    }

    #[test]
    fn normalize_rejects_coincident() {
        let m = Mesh::new("d", vec![Vec3::new(1.0, 2.0, 3.0); 3], vec![[0, 1, 2]]).unwrap();
        assert!(matches!(normalize(&m), Err(Error::Degenerate(_))));
        let m = Mesh::new("d", vec![Vec3::new(1.0, 2.0, 3.0); 2], vec![]).unwrap();
        assert!(matches!(normalize(&m), Err(Error::Degenerate(_))));
    }

    #[test]
    fn mesh_new_checks_indices() {
        assert!(Mesh::new("x", vec![Vec3::zeros()], vec![[0, 0, 1]]).is_err());
    }
}
