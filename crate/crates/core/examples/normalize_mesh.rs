//! Loads a mesh (or builds a torus) and prints its enclosing ball before and
//! after normalization.
//!
//! `cargo run --example normalize_mesh -- [model.off]`

use radial_retrieval::ball::min_enclosing_ball;
use radial_retrieval::mesh::{face_geometry, normalize, Mesh, Vec3};
use radial_retrieval::shapes;

fn main() -> radial_retrieval::Result<()> {
    let mesh = match std::env::args().nth(1) {
        Some(path) => Mesh::load(path.as_ref())?,
        None => {
            shapes::torus(0.7, 0.3, 48, 24).map_vertices(|v| v * 12.0 + Vec3::new(3.0, -1.0, 5.0))
        }
    };
    println!(
        "{}: {} vertices, {} faces",
        mesh.id,
        mesh.vertices().len(),
        mesh.faces().len()
    );

    let n = normalize(&mesh)?;
    let b = n.source_ball;
    println!(
        "source ball: center {:.4?} radius {:.4}",
        b.center.as_slice(),
        b.radius
    );
    let after = min_enclosing_ball(n.vertices())?;
    println!(
        "normalized:  center {:.1e} radius {:.12}",
        after.center.norm(),
        after.radius
    );
    println!(
        "surface area in unit-ball units: {:.6}",
        face_geometry(&n).total_area()
    );
    Ok(())
}
