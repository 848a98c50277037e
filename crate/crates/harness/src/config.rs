use groupmark_core::{Params, RmsConvention, Scheme};

use crate::error::{HarnessError, Result};

/// One simulated scenario, run for `replicates` independent draws.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub students: usize,
    pub group_size: usize,
    pub rounds: usize,
    pub schemes: Vec<Scheme>,
    pub params: Params,
    pub replicates: usize,
    pub seed: u64,
    pub mean: f64,
    pub sd: f64,
    pub rms_convention: RmsConvention,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            students: 52,
            group_size: 4,
            rounds: 4,
            schemes: Scheme::ALL.to_vec(),
            params: Params::default(),
            replicates: 200,
            seed: 1,
            mean: 60.0,
            sd: 12.0,
            rms_convention: RmsConvention::Paper,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(HarnessError::Config("replicates must be at least 1".into()));
        }
        if self.schemes.is_empty() {
            return Err(HarnessError::Config("no schemes selected".into()));
        }
        if self.students == 0 {
            return Err(HarnessError::Config("students must be at least 1".into()));
        }
        if self.group_size < 2 {
            return Err(HarnessError::Config("group size must be at least 2".into()));
        }
        if self.rounds == 0 {
            return Err(HarnessError::Config("rounds must be at least 1".into()));
        }
        if !self.students.is_multiple_of(self.group_size) {
            return Err(HarnessError::Config(format!(
                "group size {} does not divide {} students",
                self.group_size, self.students
            )));
        }
        if !self.mean.is_finite() || !self.sd.is_finite() || self.sd < 0.0 {
            return Err(HarnessError::Config(
                "mean must be finite and sd finite and non-negative".into(),
            ));
        }
        self.params.validate()?;
        Ok(())
    }

    /// Schemes in canonical order, without duplicates.
    pub fn scheme_list(&self) -> Vec<Scheme> {
        Scheme::ALL
            .iter()
            .copied()
            .filter(|s| self.schemes.contains(s))
            .collect()
    }
}

/// Parses a comma-separated scheme list; `all` selects every scheme.
pub fn parse_schemes(s: &str) -> Result<Vec<Scheme>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Scheme::ALL.to_vec());
    }
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Scheme>().map_err(HarnessError::from))
        .collect()
}
