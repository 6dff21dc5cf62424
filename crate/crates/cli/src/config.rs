//! `key = value` settings for `verify`. Blank lines and `#` comments are
//! ignored.
//!
//! ```text
//! oracle_budget = 10        # every family
//! oracle_budget.A = 14      # one family
//! oracle_timeout_secs = 30  # 0 disables the wall-clock cap
//! parallel = false
//! max_rank = 12
//! ```

use std::path::Path;
use std::time::Duration;

use kostant_core::verify::OracleBudget;
use kostant_core::Family;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileSettings {
    pub budget_all: Option<u32>,
    pub budget_family: Vec<(Family, u32)>,
    pub timeout: Option<Option<Duration>>,
    pub parallel: Option<bool>,
    pub max_rank: Option<u32>,
}

impl FileSettings {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut out = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| ConfigError::Syntax { line, msg };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let uint = || {
                value.parse::<u32>().map_err(|_| {
                    err(format!(
                        "`{key}` needs a non-negative integer, got `{value}`"
                    ))
                })
            };
            match key {
                "oracle_budget" => out.budget_all = Some(uint()?),
                "oracle_timeout_secs" => {
                    let secs = uint()?;
                    out.timeout = Some((secs > 0).then(|| Duration::from_secs(secs.into())));
                }
                "parallel" => {
                    out.parallel = Some(value.parse::<bool>().map_err(|_| {
                        err(format!("`parallel` needs true or false, got `{value}`"))
                    })?)
                }
                "max_rank" => out.max_rank = Some(uint()?),
                _ => match key.strip_prefix("oracle_budget.") {
                    Some(f) => {
                        let family = f.parse::<Family>().map_err(|e| err(e.to_string()))?;
                        out.budget_family.push((family, uint()?));
                    }
                    None => return Err(err(format!("unknown key `{key}`"))),
                },
            }
        }
        Ok(out)
    }

    pub fn apply_budget(&self, budget: &mut OracleBudget) {
        if let Some(all) = self.budget_all {
            *budget = OracleBudget::uniform(all);
        }
        for &(family, rank) in &self.budget_family {
            budget.set(family, rank);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let s = FileSettings::parse(
            "# budgets\noracle_budget = 9\noracle_budget.a = 15\n\noracle_timeout_secs = 0\nparallel=false\nmax_rank = 7 # trailing\n",
        )
        .unwrap();
        assert_eq!(s.budget_all, Some(9));
        assert_eq!(s.budget_family, vec![(Family::A, 15)]);
        assert_eq!(s.timeout, Some(None));
        assert_eq!(s.parallel, Some(false));
        assert_eq!(s.max_rank, Some(7));
        let mut b = OracleBudget::default();
        s.apply_budget(&mut b);
        assert_eq!((b.a, b.b, b.c, b.d), (15, 9, 9, 9));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            FileSettings::parse("nonsense"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        assert!(FileSettings::parse("oracle_budget = -1").is_err());
        assert!(FileSettings::parse("oracle_budget.E = 3").is_err());
        assert!(FileSettings::parse("colour = red").is_err());
    }
}
