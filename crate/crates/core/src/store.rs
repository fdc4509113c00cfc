//! Line-oriented JSON feature store.
//!
//! The first line is a header carrying the descriptor parameters and their
//! fingerprint; every following line is one model:
//! `{"id":…,"fingerprint":…,"global":[rows·cols reals],"local":[13·36 reals]}`,
//! both arrays row-major. Records are written sorted by id.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::config::DescriptorParams;
use crate::error::{Error, Result};
use crate::global::GlobalDescriptor;
use crate::local::{LocalDescriptor, CAMERAS};
use crate::retrieval::FeatureRecord;
use crate::zernike::MOMENT_COUNT;

const FORMAT: &str = "radial-retrieval-features";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    fingerprint: String,
    params: DescriptorParams,
}

#[derive(Serialize, Deserialize)]
struct Line {
    id: String,
    fingerprint: String,
    global: Vec<f64>,
    local: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureStore {
    params: DescriptorParams,
    records: BTreeMap<String, FeatureRecord>,
}

impl FeatureStore {
    pub fn new(params: DescriptorParams) -> Self {
        Self {
            params,
            records: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> &DescriptorParams {
        &self.params
    }

    pub fn fingerprint(&self) -> String {
        self.params.fingerprint()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Adds or replaces the record with the same model id.
    pub fn insert(&mut self, record: FeatureRecord) {
        self.records.insert(record.model_id.clone(), record);
    }

    pub fn get(&self, id: &str) -> Option<&FeatureRecord> {
        self.records.get(id)
    }

    /// Records in id order.
    pub fn records(&self) -> impl Iterator<Item = &FeatureRecord> {
        self.records.values()
    }

    pub fn to_vec(&self) -> Vec<FeatureRecord> {
        self.records.values().cloned().collect()
    }

    /// Refuses to mix features computed with different parameters.
    pub fn check_params(&self, active: &DescriptorParams) -> Result<()> {
        if self.params.fingerprint() == active.fingerprint() {
            return Ok(());
        }
        let mut diffs = self.params.differences(active);
        if diffs.is_empty() {
            diffs.push("fixed descriptor constants changed".into());
        }
        Err(Error::FingerprintMismatch(format!(
            "store vs active: {}",
            diffs.join(", ")
        )))
    }

    pub fn write(&self, mut w: impl Write) -> std::io::Result<()> {
        let fingerprint = self.fingerprint();
        let header = Header {
            format: FORMAT.into(),
            version: VERSION,
            fingerprint: fingerprint.clone(),
            params: self.params,
        };
        serde_json::to_writer(&mut w, &header)?;
        writeln!(w)?;
        for r in self.records.values() {
            let line = Line {
                id: r.model_id.clone(),
                fingerprint: fingerprint.clone(),
                global: r.global.values.iter().copied().collect(),
                local: r.local.values.iter().copied().collect(),
            };
            serde_json::to_writer(&mut w, &line)?;
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn read(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let bad = |line: usize, msg: String| Error::parse(line, msg);

        let (_, first) = lines
            .next()
            .ok_or_else(|| bad(1, "empty feature store".into()))?;
        let first = first.map_err(|e| bad(1, e.to_string()))?;
        let header: Header =
            serde_json::from_str(&first).map_err(|e| bad(1, format!("bad header: {e}")))?;
        if header.format != FORMAT || header.version != VERSION {
            return Err(bad(
                1,
                format!("unsupported store {} v{}", header.format, header.version),
            ));
        }
        if header.fingerprint != header.params.fingerprint() {
            return Err(Error::FingerprintMismatch(
                "header fingerprint does not match its parameters (written by another version)"
                    .into(),
            ));
        }
        let grid = header.params.bin_grid()?;
        let (rows, cols) = (grid.rows(), grid.cols());

        let mut store = FeatureStore::new(header.params);
        for (i, text) in lines {
            let ln = i + 1;
            let text = text.map_err(|e| bad(ln, e.to_string()))?;
            if text.trim().is_empty() {
                continue;
            }
            let line: Line = serde_json::from_str(&text).map_err(|e| bad(ln, e.to_string()))?;
            if line.fingerprint != header.fingerprint {
                return Err(Error::FingerprintMismatch(format!(
                    "record {} has fingerprint {}, store header {}",
                    line.id, line.fingerprint, header.fingerprint
                )));
            }
            let global = Array2::from_shape_vec((rows, cols), line.global).map_err(|_| {
                bad(
                    ln,
                    format!("global descriptor of {} is not {rows}x{cols}", line.id),
                )
            })?;
            let local = Array2::from_shape_vec((CAMERAS.len(), MOMENT_COUNT), line.local)
                .map_err(|_| bad(ln, format!("local descriptor of {} is not 13x36", line.id)))?;
            if store.records.contains_key(&line.id) {
                return Err(bad(ln, format!("duplicate model id {}", line.id)));
            }
            store.insert(FeatureRecord {
                model_id: line.id,
                global: GlobalDescriptor { values: global },
                local: LocalDescriptor { values: local },
            });
        }
        Ok(store)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(f);
        self.write(&mut w).map_err(|e| Error::io(path, e))?;
        w.flush().map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read(BufReader::new(f))
    }
}
