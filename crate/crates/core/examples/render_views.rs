//! Renders the 13 local feature views of a model as PGM images.
//!
//! `cargo run --example render_views -- [model.off] [out_dir]`

use std::path::PathBuf;

use radial_retrieval::local::{feature_views, local_grid};
use radial_retrieval::mesh::{normalize, Mesh};
use radial_retrieval::shapes;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let mesh = match args.next() {
        Some(path) => Mesh::load(path.as_ref())?,
        None => shapes::torus(0.7, 0.3, 64, 32),
    };
    let out = PathBuf::from(args.next().unwrap_or_else(|| "views".into()));
    std::fs::create_dir_all(&out)?;

    let views = feature_views(&normalize(&mesh)?, &local_grid(3)?, 256)?;
    for (i, view) in views.iter().enumerate() {
        let path = out.join(format!("{}_{i:02}.pgm", mesh.id));
        view.save_pgm(&path)?;
        let c = view.camera;
        println!(
            "view {i:2} from ({:>2}, {:>2}, {:>2}): {:5} foreground pixels -> {}",
            c.x,
            c.y,
            c.z,
            view.foreground_count(),
            path.display()
        );
    }
    Ok(())
}
