use proptest::prelude::*;
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radial_retrieval::global::{bin_index, global_descriptor, BinGrid, GlobalDescriptor};
use radial_retrieval::mesh::{face_geometry, normalize, Mesh, Vec3};
use radial_retrieval::{shapes, synthetic};

fn describe(mesh: &Mesh) -> GlobalDescriptor {
    global_descriptor(
        &face_geometry(&normalize(mesh).unwrap()),
        &BinGrid::default(),
    )
}

fn max_diff(a: &GlobalDescriptor, b: &GlobalDescriptor) -> f64 {
    (&a.values - &b.values)
        .iter()
        .map(|d| d.abs())
        .fold(0.0, f64::max)
}

fn class() -> impl Strategy<Value = &'static str> {
    prop::sample::select(synthetic::CLASSES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn face_order_does_not_matter(class in class(), seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mesh = synthetic::instance(class, &mut rng);
        let mut faces = mesh.faces().to_vec();
        faces.shuffle(&mut rng);
        for f in &mut faces {
            f.rotate_left(seed as usize % 3);
        }
        let shuffled = Mesh::new("s", mesh.vertices().to_vec(), faces).unwrap();
        prop_assert!(max_diff(&describe(&mesh), &describe(&shuffled)) <= 1e-12);
    }

    #[test]
    fn translation_and_scale_do_not_matter(
        class in class(),
        seed in 0u64..10_000,
        scale in 0.01..100.0f64,
        (x, y, z) in (-50.0..50.0f64, -50.0..50.0f64, -50.0..50.0f64),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mesh = synthetic::instance(class, &mut rng);
        let moved = mesh.map_vertices(|v| v * scale + Vec3::new(x, y, z));
        prop_assert!(max_diff(&describe(&mesh), &describe(&moved)) <= 1e-6);
    }

    #[test]
    fn values_lie_in_the_unit_interval(class in class(), seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = describe(&synthetic::instance(class, &mut rng));
        prop_assert_eq!(d.values.dim(), (6, 12));
        prop_assert!(d.values.iter().all(|&v| (0.0..=1.0 + 1e-12).contains(&v)));
    }

    #[test]
    fn bins_cover_every_direction(
        (x, y, z) in (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64),
    ) {
        let d = Vec3::new(x, y, z);
        prop_assume!(d.norm() > 1e-6);
        let (i, j) = bin_index(&d, &BinGrid::default()).unwrap();
        prop_assert!(i < 6 && j < 12);
    }
}

#[test]
fn planar_refinement_barely_moves_occupied_bins() {
    for mesh in [
        shapes::icosphere(2),
        shapes::cube(4),
        shapes::torus(0.7, 0.3, 24, 12),
    ] {
        let coarse = describe(&mesh);
        let fine = describe(&shapes::subdivide(&mesh));
        for (c, f) in coarse.values.iter().zip(&fine.values) {
            if *c > 0.0 {
                assert!((c - f).abs() < 0.05, "bin moved from {c} to {f}");
            }
        }
    }
}

#[test]
fn cube_face_centers_fill_expected_bins() {
    // The cube touches its enclosing ball only at the corners, so every
    // occupied bin averages to something between the face and corner radii.
    let d = describe(&shapes::cube(8));
    let inradius = 1.0 / 3f64.sqrt();
    assert!(d
        .values
        .iter()
        .all(|&v| v == 0.0 || (inradius - 1e-9..=1.0).contains(&v)));
    assert!(d.values.iter().all(|&v| v > 0.0));
}

#[test]
fn coarser_bins_are_supported() {
    let grid = BinGrid::new(45.0, 90.0).unwrap();
    let n = normalize(&shapes::icosphere(2)).unwrap();
    let d = global_descriptor(&face_geometry(&n), &grid);
    assert_eq!(d.values.dim(), (4, 4));
    assert!(BinGrid::new(35.0, 30.0).is_err());
}
