use blackswan_core::decision::{Bounds, MAX_EVENTS};
use blackswan_core::models::ScanLimits;
use thiserror::Error;

pub const ENV_MAX_N_ARBITRARY: &str = "BLACKSWAN_MAX_N_ARBITRARY";
pub const ENV_MAX_N_STRICT: &str = "BLACKSWAN_MAX_N_STRICT";
pub const ENV_MAX_EVENTS: &str = "BLACKSWAN_MAX_EVENTS";

/// Anything that stops a command before it produces a verdict.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("configuration: {0}")]
    Config(String),
}

impl CliError {
    pub fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Size caps after environment overrides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub limits: ScanLimits,
    pub max_events: usize,
}

fn read_cap(
    lookup: &impl Fn(&str) -> Option<String>,
    var: &str,
    default: usize,
    ceiling: usize,
) -> Result<usize, CliError> {
    let Some(raw) = lookup(var) else {
        return Ok(default);
    };
    let value: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{var}=`{raw}` is not a non-negative integer")))?;
    if value > ceiling {
        return Err(CliError::Config(format!(
            "{var}={value} exceeds the hard limit {ceiling}"
        )));
    }
    Ok(value)
}

impl Caps {
    pub fn from_env() -> Result<Self, CliError> {
        Caps::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, CliError> {
        let defaults = ScanLimits::default();
        let hard = ScanLimits::HARD;
        Ok(Caps {
            limits: ScanLimits {
                max_n_arbitrary: read_cap(
                    &lookup,
                    ENV_MAX_N_ARBITRARY,
                    defaults.max_n_arbitrary,
                    hard.max_n_arbitrary,
                )?,
                max_n_strict: read_cap(
                    &lookup,
                    ENV_MAX_N_STRICT,
                    defaults.max_n_strict,
                    hard.max_n_strict,
                )?,
            },
            max_events: read_cap(
                &lookup,
                ENV_MAX_EVENTS,
                Bounds::default().max_events,
                MAX_EVENTS,
            )?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps(pairs: &[(&str, &str)]) -> Result<Caps, CliError> {
        let pairs: Vec<(String, String)> = pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        Caps::from_lookup(move |k| pairs.iter().find(|(n, _)| n == k).map(|(_, v)| v.clone()))
    }

    #[test]
    fn defaults_without_overrides() {
        let c = caps(&[]).unwrap();
        assert_eq!(c.limits, ScanLimits::default());
        assert_eq!(c.max_events, 3);
    }

    #[test]
    fn overrides_are_applied_and_bounded() {
        let c = caps(&[(ENV_MAX_N_ARBITRARY, "2"), (ENV_MAX_EVENTS, " 4 ")]).unwrap();
        assert_eq!(c.limits.max_n_arbitrary, 2);
        assert_eq!(c.max_events, 4);
        assert!(caps(&[(ENV_MAX_N_STRICT, "9")]).is_err());
        assert!(caps(&[(ENV_MAX_N_ARBITRARY, "four")]).is_err());
        assert!(caps(&[(ENV_MAX_EVENTS, "17")]).is_err());
    }
}
