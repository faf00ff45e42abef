use robin_bouncer::qbounce::{Constants, PhysicalScales, G_QBOUNCE};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const DEFAULT_PRECISION: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Overrides read from the TOML file given with --config.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub format: Option<Format>,
    pub precision: Option<usize>,
    #[serde(default)]
    pub constants: ConstantOverrides,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantOverrides {
    pub mass: Option<f64>,
    pub g: Option<f64>,
    pub hbar: Option<f64>,
    pub h: Option<f64>,
    pub ev: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.message().to_string())
    }
}

/// Settings after merging defaults, config file and flags.
#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub constants: Constants,
    pub g: f64,
    pub format: Option<Format>,
    pub precision: usize,
}

impl Resolved {
    pub fn new(
        file: RunConfig,
        format: Option<Format>,
        precision: Option<usize>,
        g: Option<f64>,
    ) -> Result<Self, String> {
        let d = Constants::default();
        let c = &file.constants;
        let constants = Constants {
            mass: c.mass.unwrap_or(d.mass),
            hbar: c.hbar.unwrap_or(d.hbar),
            h: c.h.unwrap_or(d.h),
            ev: c.ev.unwrap_or(d.ev),
        };
        let precision = precision.or(file.precision).unwrap_or(DEFAULT_PRECISION);
        if !(1..=17).contains(&precision) {
            return Err(format!("precision must be in 1..=17, got {precision}"));
        }
        let r = Resolved {
            constants,
            g: g.or(c.g).unwrap_or(G_QBOUNCE),
            format: format.or(file.format),
            precision,
        };
        r.scales()?;
        Ok(r)
    }

    pub fn scales(&self) -> Result<PhysicalScales, String> {
        PhysicalScales::new(self.constants, self.g).map_err(|e| e.to_string())
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
