//! End-to-end operations behind the command-line tool: batch extraction into
//! a feature store, querying, and evaluation against a classification.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use crate::config::{Config, DescriptorParams};
use crate::error::{Error, Result};
use crate::eval::{average_pr, parse_cla, ClassificationDB, PRCurve};
use crate::global::{global_descriptor, BinGrid};
use crate::local::{local_descriptor_with, LocalGrid};
use crate::mesh::{face_geometry, normalize, Mesh};
use crate::retrieval::{
    distance_matrix_with, rank_with, write_matrix_csv, write_matrix_raw, FeatureRecord, RankEntry,
    RankOptions,
};
use crate::store::FeatureStore;
use crate::zernike::ZernikeBasis;

/// Computes both descriptors with fixed parameters. Cheap to share across threads.
#[derive(Debug, Clone)]
pub struct Extractor {
    params: DescriptorParams,
    bins: BinGrid,
    local: LocalGrid,
    basis: ZernikeBasis,
}

impl Extractor {
    pub fn new(params: DescriptorParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            bins: params.bin_grid()?,
            local: params.local_grid()?,
            basis: ZernikeBasis::for_resolution(params.resolution)?,
            params,
        })
    }

    pub fn params(&self) -> &DescriptorParams {
        &self.params
    }

    pub fn extract(&self, mesh: &Mesh) -> Result<FeatureRecord> {
        let normalized = normalize(mesh)?;
        let global = global_descriptor(&face_geometry(&normalized), &self.bins);
        let local = local_descriptor_with(&normalized, &self.local, &self.basis)?;
        Ok(FeatureRecord {
            model_id: mesh.id.clone(),
            global,
            local,
        })
    }

    pub fn extract_file(&self, path: &Path) -> Result<FeatureRecord> {
        self.extract(&Mesh::load(path)?)
    }
}

fn is_mesh_file(path: &Path) -> bool {
    path.extension()
        .map(|e| e.to_string_lossy().to_ascii_lowercase())
        .is_some_and(|e| e == "off" || e == "obj")
}

/// Mesh files under `dir`, sorted. Fails when two files share a model id.
pub fn mesh_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(dir).to_path_buf();
            Error::io(path, e.into())
        })?;
        if entry.file_type().is_file() && is_mesh_file(entry.path()) {
            files.push(entry.into_path());
        }
    }
    let mut seen: HashMap<String, &PathBuf> = HashMap::new();
    for f in &files {
        let id = f
            .file_stem()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        if let Some(prev) = seen.insert(id.clone(), f) {
            return Err(Error::InvalidInput(format!(
                "model id {id} is used by both {} and {}",
                prev.display(),
                f.display()
            )));
        }
    }
    Ok(files)
}

#[derive(Debug, Default)]
pub struct ExtractReport {
    pub processed: usize,
    pub failures: Vec<(PathBuf, String)>,
}

/// Extracts every mesh under `input_dir` and merges the records into the
/// store at `store_path` (created if absent). Unreadable or degenerate models
/// are reported and skipped.
pub fn extract_directory(
    input_dir: &Path,
    store_path: &Path,
    params: &DescriptorParams,
) -> Result<ExtractReport> {
    let extractor = Extractor::new(*params)?;
    let mut store = if store_path.exists() {
        let s = FeatureStore::load(store_path)?;
        s.check_params(params)?;
        s
    } else {
        FeatureStore::new(*params)
    };

    let files = mesh_files(input_dir)?;
    let results: Vec<(PathBuf, Result<FeatureRecord>)> = files
        .into_par_iter()
        .map(|f| {
            let r = extractor.extract_file(&f);
            (f, r)
        })
        .collect();

    let mut report = ExtractReport::default();
    for (path, result) in results {
        match result {
            Ok(record) => {
                store.insert(record);
                report.processed += 1;
            }
            Err(e) => {
                log::warn!("skipping {}: {e}", path.display());
                report.failures.push((path, e.to_string()));
            }
        }
    }
    store.save(store_path)?;
    Ok(report)
}

/// Ranks the store against a query mesh and returns the best `k` entries.
pub fn query_model(
    model: &Path,
    store_path: &Path,
    k: usize,
    config: &Config,
) -> Result<Vec<RankEntry>> {
    let store = FeatureStore::load(store_path)?;
    store.check_params(&config.descriptor())?;
    if store.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{} holds no features",
            store_path.display()
        )));
    }
    let query = Extractor::new(config.descriptor())?.extract_file(model)?;
    let opts = RankOptions {
        normalization: config.normalization,
        ..Default::default()
    };
    let mut ranked = rank_with(&query, &store.to_vec(), &opts)?.entries;
    ranked.truncate(k);
    Ok(ranked)
}

/// PR curve of a record set under the given ranking options.
pub fn evaluate_records(
    records: &[FeatureRecord],
    classes: &ClassificationDB,
    opts: &RankOptions,
    levels: usize,
) -> Result<PRCurve> {
    let ids: Vec<String> = records.iter().map(|r| r.model_id.clone()).collect();
    let matrix = distance_matrix_with(records, opts)?;
    average_pr(&ids, &matrix, classes, levels)
}

/// Files written by [`evaluate_store`].
pub const DISTANCE_CSV: &str = "distances.csv";
pub const DISTANCE_RAW: &str = "distances.f32";
pub const PR_CSV: &str = "pr.csv";

/// Computes the distance matrix of a store, writes it together with the
/// averaged PR curve into `out_dir`, and returns the curve.
pub fn evaluate_store(
    store_path: &Path,
    cla_path: &Path,
    out_dir: &Path,
    config: &Config,
) -> Result<PRCurve> {
    config.validate()?;
    let store = FeatureStore::load(store_path)?;
    store.check_params(&config.descriptor())?;
    let cla = std::fs::read(cla_path).map_err(|e| Error::io(cla_path, e))?;
    let classes = parse_cla(&cla)?;
    let missing: Vec<&str> = classes
        .models()
        .filter(|m| store.get(m).is_none())
        .collect();
    if !missing.is_empty() {
        return Err(Error::InvalidInput(format!(
            "classified models missing from the store: {}",
            missing.join(", ")
        )));
    }

    let records = store.to_vec();
    let ids: Vec<String> = records.iter().map(|r| r.model_id.clone()).collect();
    let opts = RankOptions {
        normalization: config.normalization,
        ..Default::default()
    };
    let matrix = distance_matrix_with(&records, &opts)?;
    let curve = average_pr(&ids, &matrix, &classes, config.recall_levels)?;

    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let write = |name: &str, f: &dyn Fn(&mut Vec<u8>) -> std::io::Result<()>| -> Result<()> {
        let path = out_dir.join(name);
        let mut buf = Vec::new();
        f(&mut buf).map_err(|e| Error::io(&path, e))?;
        std::fs::write(&path, buf).map_err(|e| Error::io(&path, e))
    };
    write(DISTANCE_CSV, &|b| write_matrix_csv(&ids, &matrix, b))?;
    write(DISTANCE_RAW, &|b| write_matrix_raw(&matrix, b))?;
    write(PR_CSV, &|b| curve.write_csv(b))?;
    Ok(curve)
}
