//! Prints the 6×12 global radial-distance histogram of a model.
//!
//! `cargo run --example global_histogram -- [model.off]`

use radial_retrieval::global::{global_descriptor, BinGrid};
use radial_retrieval::mesh::{face_geometry, normalize, Mesh};
use radial_retrieval::shapes;

fn main() -> radial_retrieval::Result<()> {
    let mesh = match std::env::args().nth(1) {
        Some(path) => Mesh::load(path.as_ref())?,
        None => shapes::cube(8),
    };
    let grid = BinGrid::default();
    let d = global_descriptor(&face_geometry(&normalize(&mesh)?), &grid);

    print!("phi\\theta");
    for j in 0..grid.cols() {
        print!("{:>7.0}", j as f64 * grid.delta_theta());
    }
    println!();
    for (i, row) in d.values.rows().into_iter().enumerate() {
        print!("{:>9.0}", i as f64 * grid.delta_phi());
        for v in row {
            print!("{v:>7.3}");
        }
        println!();
    }
    Ok(())
}
