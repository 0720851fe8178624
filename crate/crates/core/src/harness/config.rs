//! Run configuration. Precedence: command-line flags, then a JSON config
//! file (`--config` or `HKIT_CONFIG`), then built-in defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CONFIG_ENV: &str = "HKIT_CONFIG";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Dimension of the base space.
    pub n: usize,
    /// Gauss-Hermite nodes per axis.
    pub nodes: usize,
    /// Hermite truncation level for operator matrices.
    pub trunc: usize,
    pub t_values: Vec<f64>,
    pub tolerance: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { n: 1, nodes: 64, trunc: 30, t_values: vec![0.25, 0.5], tolerance: 1e-6, trials: 20, seed: 7 }
    }
}

/// Values given on the command line; `None` leaves the lower layer alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub nodes: Option<usize>,
    pub trunc: Option<usize>,
    pub t_values: Option<Vec<f64>>,
    pub tolerance: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

fn bad(msg: String) -> Error {
    Error::InvalidConfig(msg)
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.n) {
            return Err(bad(format!("n must be 1 or 2 (got {})", self.n)));
        }
        if !(16..=128).contains(&self.nodes) {
            return Err(bad(format!("nodes must lie in [16, 128] (got {})", self.nodes)));
        }
        if self.trunc == 0 || self.trunc > 60 || self.trunc >= self.nodes {
            return Err(bad(format!("trunc must lie in [1, min(60, nodes - 1)] (got {})", self.trunc)));
        }
        if self.t_values.is_empty() || self.t_values.iter().any(|t| !(*t > 0.0 && *t <= 4.0)) {
            return Err(bad(format!("t values must lie in (0, 4] (got {:?})", self.t_values)));
        }
        if !(self.tolerance > 0.0 && self.tolerance <= 1e-2) {
            return Err(bad(format!("tolerance must lie in (0, 1e-2] (got {})", self.tolerance)));
        }
        if !(1..=1000).contains(&self.trials) {
            return Err(bad(format!("trials must lie in [1, 1000] (got {})", self.trials)));
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
    }

    pub fn apply(mut self, o: &Overrides) -> Self {
        if let Some(v) = o.n {
            self.n = v;
        }
        if let Some(v) = o.nodes {
            self.nodes = v;
        }
        if let Some(v) = o.trunc {
            self.trunc = v;
        }
        if let Some(v) = &o.t_values {
            self.t_values = v.clone();
        }
        if let Some(v) = o.tolerance {
            self.tolerance = v;
        }
        if let Some(v) = o.trials {
            self.trials = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        self
    }

    /// Layers the file (explicit path, else `HKIT_CONFIG`) and the overrides
    /// over the defaults, then validates.
    pub fn load(file: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let env_path = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        let base = match file.map(Path::to_path_buf).or(env_path) {
            Some(p) => Config::from_file(&p)?,
            None => Config::default(),
        };
        let cfg = base.apply(overrides);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        Config::default().validate().unwrap();
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("hkit-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("c.json");
        std::fs::write(&p, r#"{"trials": 5, "seed": 3}"#).unwrap();
        let o = Overrides { seed: Some(9), ..Default::default() };
        let c = Config::load(Some(&p), &o).unwrap();
        assert_eq!((c.trials, c.seed, c.nodes), (5, 9, 64));
    }

    #[test]
    fn negative_t_is_invalid() {
        let o = Overrides { t_values: Some(vec![-1.0]), ..Default::default() };
        assert!(matches!(Config::default().apply(&o).validate(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = serde_json::from_str::<Config>(r#"{"nodez": 3}"#);
        assert!(e.is_err());
    }
}
