//! Builds a small in-memory database from the synthetic generator and ranks
//! it against a fresh query, showing both distance components.
//!
//! `cargo run --release --example retrieve`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use radial_retrieval::config::DescriptorParams;
use radial_retrieval::pipeline::Extractor;
use radial_retrieval::retrieval::rank;
use radial_retrieval::synthetic;

fn main() -> radial_retrieval::Result<()> {
    let extractor = Extractor::new(DescriptorParams {
        resolution: 128,
        ..Default::default()
    })?;
    let (meshes, _) = synthetic::generate(3, 1)?;
    let database = meshes
        .iter()
        .map(|m| extractor.extract(m))
        .collect::<radial_retrieval::Result<Vec<_>>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut query = synthetic::instance("cylinder", &mut rng);
    query.id = "query".into();
    let q = extractor.extract(&query)?;

    println!("rank  model          d       d_g     d_l");
    for (i, e) in rank(&q, &database)?.entries.iter().enumerate() {
        println!(
            "{:>4}  {:<12} {:.4}  {:.4}  {:.4}",
            i + 1,
            e.model_id,
            e.distance,
            e.global,
            e.local
        );
    }
    Ok(())
}
