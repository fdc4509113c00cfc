use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::global::BinGrid;
use crate::local::{LocalGrid, CAMERAS, GRAY_EPSILON};
use crate::retrieval::Normalization;
use crate::zernike::{moment_orders, MAX_ORDER};

/// Parameters that change descriptor values. Stored alongside features.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DescriptorParams {
    /// Polar bin width in degrees.
    pub delta_phi: f64,
    /// Azimuthal bin width in degrees.
    pub delta_theta: f64,
    /// Local centers per axis.
    pub local_n: usize,
    /// Feature view side length in pixels.
    pub resolution: usize,
}

impl Default for DescriptorParams {
    fn default() -> Self {
        Self {
            delta_phi: 30.0,
            delta_theta: 30.0,
            local_n: 3,
            resolution: 256,
        }
    }
}

impl DescriptorParams {
    pub fn bin_grid(&self) -> Result<BinGrid> {
        BinGrid::new(self.delta_phi, self.delta_theta)
    }

    pub fn local_grid(&self) -> Result<LocalGrid> {
        LocalGrid::new(self.local_n)
    }

    pub fn validate(&self) -> Result<()> {
        self.bin_grid()?;
        self.local_grid()?;
        if !(8..=4096).contains(&self.resolution) {
            return Err(Error::Config(format!(
                "resolution must be in 8..=4096, got {}",
                self.resolution
            )));
        }
        Ok(())
    }

    /// Hash of everything that affects descriptor bytes, including the fixed
    /// gray offset, camera list and moment ordering.
    pub fn fingerprint(&self) -> String {
        let canonical = format!(
            "dphi={:?};dtheta={:?};n={};res={};eps={:?};cams={:?};orders={:?}",
            self.delta_phi,
            self.delta_theta,
            self.local_n,
            self.resolution,
            GRAY_EPSILON,
            CAMERAS,
            moment_orders(MAX_ORDER),
        );
        let digest = Sha256::digest(canonical.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Human-readable list of differing parameters.
    pub fn differences(&self, other: &DescriptorParams) -> Vec<String> {
        let mut out = Vec::new();
        if self.delta_phi != other.delta_phi {
            out.push(format!(
                "delta-phi {} vs {}",
                self.delta_phi, other.delta_phi
            ));
        }
        if self.delta_theta != other.delta_theta {
            out.push(format!(
                "delta-theta {} vs {}",
                self.delta_theta, other.delta_theta
            ));
        }
        if self.local_n != other.local_n {
            out.push(format!("local-n {} vs {}", self.local_n, other.local_n));
        }
        if self.resolution != other.resolution {
            out.push(format!(
                "resolution {} vs {}",
                self.resolution, other.resolution
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub delta_phi: f64,
    pub delta_theta: f64,
    pub local_n: usize,
    pub resolution: usize,
    pub recall_levels: usize,
    pub normalization: Normalization,
}

impl Default for Config {
    fn default() -> Self {
        let d = DescriptorParams::default();
        Self {
            delta_phi: d.delta_phi,
            delta_theta: d.delta_theta,
            local_n: d.local_n,
            resolution: d.resolution,
            recall_levels: 20,
            normalization: Normalization::PerQuery,
        }
    }
}

impl Config {
    pub fn descriptor(&self) -> DescriptorParams {
        DescriptorParams {
            delta_phi: self.delta_phi,
            delta_theta: self.delta_theta,
            local_n: self.local_n,
            resolution: self.resolution,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.descriptor().validate()?;
        if self.recall_levels == 0 {
            return Err(Error::Config("recall-levels must be positive".into()));
        }
        Ok(())
    }

    /// Reads a TOML config file; missing keys take their defaults.
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}
