use std::path::Path;

use klcells::{Ball, CoxeterSystem};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Default ball radius when neither the config file nor the command line sets one.
pub const DEFAULT_RADIUS: usize = 10;
/// Default seed of the randomized spot checks.
pub const DEFAULT_SEED: u64 = 24301;

/// A Coxeter system with weights, as read from a TOML file.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct SystemConfig {
    pub names: Vec<String>,
    pub matrix: Vec<Vec<u32>>,
    pub weights: Vec<i32>,
    #[serde(default)]
    pub radius: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            names: vec!["s1".into(), "s2".into(), "s3".into()],
            matrix: vec![vec![1, 6, 2], vec![6, 1, 3], vec![2, 3, 1]],
            weights: vec![5, 1, 1],
            radius: None,
            seed: None,
        }
    }
}

/// Everything a command needs to know about the group it runs on.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub radius: usize,
    pub seed: u64,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn load(
        path: Option<&Path>,
        radius: Option<usize>,
        weights: Option<&str>,
        seed: Option<u64>,
    ) -> Result<Self, ConfigError> {
        let mut system = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| ConfigError(format!("{}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", p.display())))?
            }
            None => SystemConfig::default(),
        };
        if let Some(w) = weights {
            system.weights = parse_weights(w)?;
        }
        if system.weights.len() != system.names.len() {
            return Err(ConfigError(format!(
                "{} weights given for {} generators",
                system.weights.len(),
                system.names.len()
            )));
        }
        let radius = radius.or(system.radius).unwrap_or(DEFAULT_RADIUS);
        let seed = seed.or(system.seed).unwrap_or(DEFAULT_SEED);
        Ok(Self { system, radius, seed })
    }

    pub fn coxeter(&self) -> klcells::Result<CoxeterSystem> {
        CoxeterSystem::new(self.system.names.clone(), self.system.matrix.clone(), self.system.weights.clone())
    }

    pub fn ball(&self) -> klcells::Result<Ball> {
        Ball::new(self.coxeter()?, self.radius)
    }

    /// Whether the system is affine G2 with the generator order used by the region map.
    pub fn is_g2(&self) -> bool {
        self.system.matrix == SystemConfig::default().matrix
    }

    /// SHA-256 over the canonical JSON of the system, the radius and the seed.
    pub fn hash(&self) -> String {
        let canonical = json!({
            "names": self.system.names,
            "matrix": self.system.matrix,
            "weights": self.system.weights,
            "radius": self.radius,
            "seed": self.seed,
        });
        let digest = Sha256::digest(canonical.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn header(&self) -> Value {
        json!({
            "config_hash": self.hash(),
            "radius": self.radius,
            "weights": self.system.weights,
        })
    }
}

pub fn parse_weights(text: &str) -> Result<Vec<i32>, ConfigError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| ConfigError(format!("bad weight {t:?} in {text:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_override_and_hash_depends_on_them() {
        let a = RunConfig::load(None, Some(4), None, None).unwrap();
        let b = RunConfig::load(None, Some(4), Some("9,2,2"), None).unwrap();
        assert_eq!(b.system.weights, vec![9, 2, 2]);
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash(), RunConfig::load(None, Some(4), None, None).unwrap().hash());
        assert!(RunConfig::load(None, None, Some("1,x"), None).is_err());
        assert!(RunConfig::load(None, None, Some("1,1"), None).is_err());
    }

    #[test]
    fn toml_file_is_read() {
        let dir = std::env::temp_dir().join(format!("klcells-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("a2.toml");
        std::fs::write(&path, "names = [\"a\", \"b\"]\nmatrix = [[1, 3], [3, 1]]\nweights = [1, 1]\nradius = 3\n").unwrap();
        let cfg = RunConfig::load(Some(&path), None, None, None).unwrap();
        assert_eq!(cfg.radius, 3);
        assert_eq!(cfg.ball().unwrap().len(), 6);
        assert!(!cfg.is_g2());
    }
}
