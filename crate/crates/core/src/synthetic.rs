//! Seeded four-class toy benchmark (sphere, box, cylinder, torus) written as
//! OFF files plus a matching `.cla` classification.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::eval::ClassificationDB;
use crate::mesh::{Mesh, Vec3};
use crate::shapes;

pub const CLASSES: [&str; 4] = ["sphere", "box", "cylinder", "torus"];
pub const CLA_FILE: &str = "synthetic.cla";

/// Largest vertex displacement, as a fraction of the shape's bounding radius.
pub const MAX_JITTER: f64 = 0.02;
/// Largest per-axis stretch or squash.
pub const MAX_STRETCH: f64 = 0.10;

fn base_shape(class: &str) -> Mesh {
    match class {
        "sphere" => shapes::icosphere(3),
        "box" => shapes::cube(8),
        "cylinder" => shapes::cylinder(0.6, 1.0, 32, 6),
        "torus" => shapes::torus(0.7, 0.3, 32, 16),
        _ => unreachable!("unknown synthetic class {class}"),
    }
}

/// One perturbed instance: uniform jitter inside a ball of radius
/// `MAX_JITTER · r` per vertex, then an independent stretch per axis.
pub fn instance(class: &str, rng: &mut impl Rng) -> Mesh {
    let base = base_shape(class);
    let radius = base.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let stretch = Vec3::from_fn(|_, _| 1.0 + rng.gen_range(-MAX_STRETCH..=MAX_STRETCH));
    let jitter: Vec<Vec3> = base
        .vertices()
        .iter()
        .map(|_| loop {
            let d = Vec3::from_fn(|_, _| rng.gen_range(-1.0..=1.0));
            if d.norm() <= 1.0 {
                break d * (MAX_JITTER * radius);
            }
        })
        .collect();
    let vertices = base
        .vertices()
        .iter()
        .zip(&jitter)
        .map(|(v, j)| (v + j).component_mul(&stretch))
        .collect();
    Mesh::new(class, vertices, base.faces().to_vec()).expect("connectivity is unchanged")
}

pub fn to_off(mesh: &Mesh) -> String {
    let mut s = String::new();
    writeln!(s, "OFF").unwrap();
    writeln!(s, "{} {} 0", mesh.vertices().len(), mesh.faces().len()).unwrap();
    for v in mesh.vertices() {
        writeln!(s, "{:.9} {:.9} {:.9}", v.x, v.y, v.z).unwrap();
    }
    for f in mesh.faces() {
        writeln!(s, "3 {} {} {}", f[0], f[1], f[2]).unwrap();
    }
    s
}

/// In-memory dataset: meshes named `<class>_<k>` and their classification.
pub fn generate(per_class: usize, seed: u64) -> Result<(Vec<Mesh>, ClassificationDB)> {
    if per_class < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 instances per class, got {per_class}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut meshes = Vec::with_capacity(per_class * CLASSES.len());
    let mut classes = Vec::with_capacity(CLASSES.len());
    for class in CLASSES {
        let mut ids = Vec::with_capacity(per_class);
        for k in 0..per_class {
            let mut m = instance(class, &mut rng);
            m.id = format!("{class}_{k:03}");
            ids.push(m.id.clone());
            meshes.push(m);
        }
        classes.push((class.to_string(), ids));
    }
    Ok((meshes, ClassificationDB::from_classes(classes)?))
}

/// Writes the dataset into `out_dir` and returns the written paths, `.cla` last.
pub fn write_dataset(out_dir: &Path, per_class: usize, seed: u64) -> Result<Vec<PathBuf>> {
    let (meshes, classes) = generate(per_class, seed)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::with_capacity(meshes.len() + 1);
    for m in &meshes {
        let path = out_dir.join(format!("{}.off", m.id));
        std::fs::write(&path, to_off(m)).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    let path = out_dir.join(CLA_FILE);
    let mut cla = Vec::new();
    classes
        .write_cla(&mut cla)
        .map_err(|e| Error::io(&path, e))?;
    std::fs::write(&path, cla).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(written)
}
