//! Run configuration read from a TOML file. Command-line flags override it.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use wcl_core::eval::Strategy;
use wcl_core::semiring::SemiringId;
use wcl_core::Caps;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StrategyName {
    Direct,
    Sparse,
    #[default]
    Auto,
}

impl From<StrategyName> for Strategy {
    fn from(s: StrategyName) -> Strategy {
        match s {
            StrategyName::Direct => Strategy::Direct,
            StrategyName::Sparse => Strategy::Sparse,
            StrategyName::Auto => Strategy::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Tsv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsConfig {
    pub direct_gamma: Option<usize>,
    pub dense_gamma: Option<usize>,
    pub pairs: Option<usize>,
    pub enum_ports: Option<usize>,
    pub fnf_ports: Option<usize>,
}

impl CapsConfig {
    pub fn resolve(&self) -> Caps {
        let d = Caps::default();
        Caps {
            direct_gamma: self.direct_gamma.unwrap_or(d.direct_gamma),
            dense_gamma: self.dense_gamma.unwrap_or(d.dense_gamma),
            pairs: self.pairs.unwrap_or(d.pairs),
            enum_ports: self.enum_ports.unwrap_or(d.enum_ports),
            fnf_ports: self.fnf_ports.unwrap_or(d.fnf_ports),
        }
    }
}

/// Contents of a settings file. Every field is optional.
///
/// ```toml
/// semiring = "viterbi"
/// ports = ["p", "q"]
/// strategy = "sparse"
/// tolerance = 1e-9
/// seed = 7
///
/// [caps]
/// direct_gamma = 10
/// ```
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, deserialize_with = "de_semiring")]
    pub semiring: Option<SemiringId>,
    pub ports: Option<Vec<String>>,
    pub model: Option<PathBuf>,
    pub formula: Option<PathBuf>,
    pub config: Option<String>,
    pub strategy: Option<StrategyName>,
    pub format: Option<Format>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub caps: CapsConfig,
}

fn de_semiring<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<SemiringId>, D::Error> {
    let s: Option<String> = Option::deserialize(d)?;
    s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
}

impl RunConfig {
    pub fn from_toml(text: &str, origin: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| Error::Usage(format!("{origin}: {e}")))
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = RunConfig::from_toml(&text, &path.display().to_string())?;
        // Relative paths are taken from the settings file's directory.
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.model, &mut cfg.formula].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(1e-9)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let cfg = RunConfig::from_toml(
            "semiring = \"minplus\"\nports = [\"p\", \"q\"]\nstrategy = \"sparse\"\nformat = \"tsv\"\ntolerance = 1e-6\n[caps]\nfnf_ports = 3\n",
            "s.toml",
        )
        .unwrap();
        assert_eq!(cfg.semiring, Some(SemiringId::MinPlus));
        assert_eq!(cfg.strategy, Some(StrategyName::Sparse));
        assert_eq!(cfg.format, Some(Format::Tsv));
        assert_eq!(cfg.caps.resolve().fnf_ports, 3);
        assert_eq!(cfg.caps.resolve().direct_gamma, Caps::default().direct_gamma);
        assert_eq!(cfg.tolerance(), 1e-6);
    }

    #[test]
    fn rejects_unknown_keys_and_semirings() {
        assert!(RunConfig::from_toml("colour = 1\n", "s.toml").is_err());
        assert!(RunConfig::from_toml("semiring = \"tropical\"\n", "s.toml").is_err());
        assert_eq!(RunConfig::from_toml("", "s.toml").unwrap(), RunConfig::default());
    }
}
