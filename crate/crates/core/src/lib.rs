//! 3D model retrieval with a hybrid radial-distance descriptor.
//!
//! A model is normalized into its minimal enclosing ball and described twice:
//!
//! * a **global** descriptor: area-weighted mean distance of face centers
//!   from the origin, binned over the spherical angle space (6×12 by default);
//! * a **local** descriptor: vertex distances to the nearest of N³ cube-grid
//!   centers are rendered as smooth-shaded grayscale views from 13 cameras,
//!   and each view is summarized by 36 Zernike moment magnitudes (13×36).
//!
//! Models are compared with mean L1 distances on both descriptors, each
//! normalized by its maximum over the database and summed.
//!
//! ```no_run
//! use radial_retrieval::{config::DescriptorParams, pipeline::Extractor, retrieval::rank};
//!
//! let extractor = Extractor::new(DescriptorParams::default())?;
//! let query = extractor.extract_file("chair.off".as_ref())?;
//! let database = vec![extractor.extract_file("table.off".as_ref())?];
//! for entry in rank(&query, &database)?.entries {
//!     println!("{} {:.4}", entry.model_id, entry.distance);
//! }
//! # Ok::<(), radial_retrieval::Error>(())
//! ```

pub mod ball;
pub mod config;
pub mod error;
pub mod eval;
pub mod global;
pub mod local;
pub mod mesh;
pub mod pipeline;
pub mod raster;
pub mod retrieval;
pub mod shapes;
pub mod store;
pub mod synthetic;
pub mod zernike;

pub use error::{Error, Result};
