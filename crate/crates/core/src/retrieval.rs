//! L1 descriptor distances, max-normalized hybrid fusion and ranking.

use std::io::Write;

use ndarray::{Array2, ArrayView2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::global::GlobalDescriptor;
use crate::local::LocalDescriptor;

/// Descriptors of one model.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRecord {
    pub model_id: String,
    pub global: GlobalDescriptor,
    pub local: LocalDescriptor,
}

/// Mean absolute difference of two equally shaped matrices.
pub fn l1_mean(a: ArrayView2<f64>, b: ArrayView2<f64>) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::ShapeMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let n = a.len();
    if n == 0 {
        return Ok(0.0);
    }
    let sum: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).sum();
    Ok(sum / n as f64)
}

/// How raw component distances are scaled before they are summed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Divide by the largest distance from the query to any database model.
    #[default]
    PerQuery,
    /// Divide by the largest distance between any two database models
    /// (and the query).
    DatabaseMax,
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-query" => Ok(Self::PerQuery),
            "database-max" => Ok(Self::DatabaseMax),
            other => Err(Error::Config(format!(
                "unknown normalization {other:?}, expected per-query or database-max"
            ))),
        }
    }
}

/// Which distance orders the ranking. `GlobalOnly`/`LocalOnly` exist for
/// ablation; the hybrid sum is the retrieval distance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Score {
    #[default]
    Hybrid,
    GlobalOnly,
    LocalOnly,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RankOptions {
    pub normalization: Normalization,
    pub score: Score,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub model_id: String,
    /// Ranking distance (the hybrid sum unless an ablation score was chosen).
    pub distance: f64,
    pub global: f64,
    pub local: f64,
}

/// Entries sorted ascending by distance, ties broken by model id.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub entries: Vec<RankEntry>,
}

impl RankedList {
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.model_id.as_str())
    }
}

fn raw_distances(query: &FeatureRecord, record: &FeatureRecord) -> Result<(f64, f64)> {
    Ok((
        l1_mean(query.global.values.view(), record.global.values.view())?,
        l1_mean(query.local.values.view(), record.local.values.view())?,
    ))
}

fn scaled(d: f64, max: f64) -> f64 {
    if max > 0.0 {
        d / max
    } else {
        0.0
    }
}

/// Largest pairwise global and local distances over a set of records.
fn pairwise_maxima(records: &[&FeatureRecord]) -> Result<(f64, f64)> {
    let rows: Vec<(f64, f64)> = (0..records.len())
        .into_par_iter()
        .map(|i| {
            records[i + 1..]
                .iter()
                .try_fold((0.0f64, 0.0f64), |(mg, ml), r| {
                    let (g, l) = raw_distances(records[i], r)?;
                    Ok((mg.max(g), ml.max(l)))
                })
        })
        .collect::<Result<_>>()?;
    Ok(rows
        .into_iter()
        .fold((0.0, 0.0), |(mg, ml), (g, l)| (mg.max(g), ml.max(l))))
}

fn rank_scaled(
    query: &FeatureRecord,
    database: &[FeatureRecord],
    score: Score,
    maxima: Option<(f64, f64)>,
) -> Result<RankedList> {
    let raw: Vec<(f64, f64)> = database
        .iter()
        .map(|r| raw_distances(query, r))
        .collect::<Result<_>>()?;
    let (max_g, max_l) = maxima.unwrap_or_else(|| {
        raw.iter().fold((0.0, 0.0), |(mg, ml), &(g, l)| {
            (f64::max(mg, g), f64::max(ml, l))
        })
    });
    let mut entries: Vec<RankEntry> = database
        .iter()
        .zip(&raw)
        .map(|(r, &(g, l))| {
            let (global, local) = (scaled(g, max_g), scaled(l, max_l));
            let distance = match score {
                Score::Hybrid => global + local,
                Score::GlobalOnly => global,
                Score::LocalOnly => local,
            };
            RankEntry {
                model_id: r.model_id.clone(),
                distance,
                global,
                local,
            }
        })
        .collect();
    entries.sort_by(|a, b| {
        a.distance
            .total_cmp(&b.distance)
            .then_with(|| a.model_id.cmp(&b.model_id))
    });
    Ok(RankedList { entries })
}

/// Ranks `database` against `query` by hybrid distance with per-query normalization.
pub fn rank(query: &FeatureRecord, database: &[FeatureRecord]) -> Result<RankedList> {
    rank_with(query, database, &RankOptions::default())
}

pub fn rank_with(
    query: &FeatureRecord,
    database: &[FeatureRecord],
    opts: &RankOptions,
) -> Result<RankedList> {
    if database.is_empty() {
        return Err(Error::InvalidInput(
            "cannot rank against an empty database".into(),
        ));
    }
    let maxima = match opts.normalization {
        Normalization::PerQuery => None,
        Normalization::DatabaseMax => {
            let mut all: Vec<&FeatureRecord> = database.iter().collect();
            all.push(query);
            Some(pairwise_maxima(&all)?)
        }
    };
    rank_scaled(query, database, opts.score, maxima)
}

/// `M[i][j]` is the distance of record `j` when record `i` is the query.
/// Not symmetric under per-query normalization.
pub fn distance_matrix(records: &[FeatureRecord]) -> Result<Array2<f64>> {
    distance_matrix_with(records, &RankOptions::default())
}

pub fn distance_matrix_with(records: &[FeatureRecord], opts: &RankOptions) -> Result<Array2<f64>> {
    if records.is_empty() {
        return Err(Error::InvalidInput(
            "distance matrix of an empty set".into(),
        ));
    }
    let maxima = match opts.normalization {
        Normalization::PerQuery => None,
        Normalization::DatabaseMax => Some(pairwise_maxima(&records.iter().collect::<Vec<_>>())?),
    };
    let index: std::collections::HashMap<&str, usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.model_id.as_str(), i))
        .collect();
    if index.len() != records.len() {
        return Err(Error::InvalidInput(
            "duplicate model ids in record set".into(),
        ));
    }
    let rows: Vec<RankedList> = records
        .par_iter()
        .map(|q| rank_scaled(q, records, opts.score, maxima))
        .collect::<Result<_>>()?;
    let t = records.len();
    let mut m = Array2::zeros((t, t));
    for (i, list) in rows.iter().enumerate() {
        for e in &list.entries {
            m[(i, index[e.model_id.as_str()])] = e.distance;
        }
    }
    Ok(m)
}

/// CSV with a header of model ids; each row starts with the query id.
pub fn write_matrix_csv(
    ids: &[String],
    matrix: &Array2<f64>,
    mut w: impl Write,
) -> std::io::Result<()> {
    write!(w, "id")?;
    for id in ids {
        write!(w, ",{id}")?;
    }
    writeln!(w)?;
    for (id, row) in ids.iter().zip(matrix.rows()) {
        write!(w, "{id}")?;
        for v in row {
            write!(w, ",{v}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Headerless row-major `f32` little-endian matrix.
pub fn write_matrix_raw(matrix: &Array2<f64>, mut w: impl Write) -> std::io::Result<()> {
    for v in matrix.iter() {
        w.write_all(&(*v as f32).to_le_bytes())?;
    }
    Ok(())
}
