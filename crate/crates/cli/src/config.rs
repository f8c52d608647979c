//! Run configuration: built-in defaults, then a TOML file, then flags.

use std::path::Path;

use serde::Deserialize;

use crate::report::Format;

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub p: Option<u64>,
    /// Absolute p-adic precision.
    pub prec: u32,
    /// Number of series terms.
    pub trunc: usize,
    pub level: Option<u64>,
    pub weight: u32,
    pub char: String,
    pub format: Format,
    pub reg_c: Option<u64>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: None,
            prec: 20,
            trunc: 8,
            level: None,
            weight: 2,
            char: "trivial".into(),
            format: Format::Table,
            reg_c: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let s = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&s)
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let c: RunConfig = toml::from_str(s).map_err(|e| format!("bad config: {e}"))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.prec == 0 || self.trunc == 0 {
            return Err("precision and truncation must be at least 1".into());
        }
        if let Some(p) = self.p {
            if !plfun::padic::is_odd_prime(p) {
                return Err(format!("p must be an odd prime, got {p}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_config() {
        let c = RunConfig::parse("p = 7\nprec = 12\nformat = \"json\"\n").unwrap();
        assert_eq!(c.p, Some(7));
        assert_eq!(c.prec, 12);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.trunc, 8);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::parse("p = 2\n").is_err());
        assert!(RunConfig::parse("prec = 0\n").is_err());
        assert!(RunConfig::parse("colour = 1\n").is_err());
    }
}
