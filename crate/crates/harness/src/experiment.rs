//! Monte-Carlo replication of the simulated marking pipeline.

use groupmark_core::assignment::{assign_groups_in, Assignment, DEFAULT_SHUFFLE_BUDGET};
use groupmark_core::population::generate_population_in;
use groupmark_core::{
    apply_scheme, error_summary, group_marks, simulate_assessments, AssessmentKinds, Assessments,
    Errors, GroupMarks, Noise, Population, Scheme, SeedStreams,
};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};

/// Everything drawn for one replicate before any scheme runs.
#[derive(Debug, Clone)]
pub struct ReplicateInputs {
    pub replicate: u64,
    pub population: Population,
    pub assignment: Assignment,
    pub group_marks: GroupMarks,
    pub assessments: Assessments,
}

#[derive(Debug, Clone)]
pub struct SchemeOutcome {
    pub scheme: Scheme,
    pub assigned: Vec<f64>,
    pub summary: Errors,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ReplicateOutcome {
    pub replicate: u64,
    pub ideal: Vec<f64>,
    pub schemes: Vec<SchemeOutcome>,
    pub diagnostics: Vec<String>,
}

impl ReplicateOutcome {
    pub fn scheme(&self, scheme: Scheme) -> Option<&SchemeOutcome> {
        self.schemes.iter().find(|s| s.scheme == scheme)
    }
}

/// Replicate-mean error metrics for one scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanErrors {
    pub e_max: f64,
    pub e_mean: f64,
    pub e_rms: f64,
    pub e_rms_standard: f64,
    pub replicates: usize,
}

/// Outcomes in replicate order. When a replicate fails, `outcomes` holds
/// every replicate before it and `failure` the error.
#[derive(Debug)]
pub struct ScenarioRun {
    pub config: ExperimentConfig,
    pub outcomes: Vec<ReplicateOutcome>,
    pub failure: Option<HarnessError>,
}

impl ScenarioRun {
    pub fn mean_errors(&self, scheme: Scheme) -> Option<MeanErrors> {
        let rows: Vec<&Errors> = self
            .outcomes
            .iter()
            .filter_map(|o| o.scheme(scheme).map(|s| &s.summary))
            .collect();
        if rows.is_empty() {
            return None;
        }
        let k = rows.len() as f64;
        let avg = |f: fn(&Errors) -> f64| rows.iter().map(|e| f(e)).sum::<f64>() / k;
        Some(MeanErrors {
            e_max: avg(|e| e.e_max),
            e_mean: avg(|e| e.e_mean),
            e_rms: avg(|e| e.e_rms),
            e_rms_standard: avg(|e| e.e_rms_standard),
            replicates: rows.len(),
        })
    }

    /// Distinct diagnostics in first-seen order.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for o in &self.outcomes {
            let scheme_diags = o.schemes.iter().flat_map(|s| &s.diagnostics);
            for d in o.diagnostics.iter().chain(scheme_diags) {
                if !seen.contains(d) {
                    seen.push(d.clone());
                }
            }
        }
        seen
    }

    pub fn into_result(self) -> Result<Vec<ReplicateOutcome>> {
        match self.failure {
            Some(e) => Err(e),
            None => Ok(self.outcomes),
        }
    }
}

pub fn simulate_replicate(cfg: &ExperimentConfig, replicate: u64) -> Result<ReplicateInputs> {
    let streams = SeedStreams::new(cfg.seed).replicate(replicate);
    let population = generate_population_in(&streams, cfg.students, cfg.mean, cfg.sd)?;
    let assignment = assign_groups_in(
        &streams,
        cfg.students,
        cfg.group_size,
        cfg.rounds,
        DEFAULT_SHUFFLE_BUDGET,
    )?;
    let w = group_marks(&population, &assignment.matrix)?;
    let which = AssessmentKinds::for_schemes(&cfg.scheme_list());
    let noise: Noise = cfg.params.noise;
    let assessments =
        simulate_assessments(&population, &assignment.matrix, &noise, which, &streams)?;
    Ok(ReplicateInputs {
        replicate,
        population,
        assignment,
        group_marks: w,
        assessments,
    })
}

pub fn run_replicate(cfg: &ExperimentConfig, replicate: u64) -> Result<ReplicateOutcome> {
    let inputs = simulate_replicate(cfg, replicate)?;
    let q = inputs.population.ideal_marks();
    let m = &inputs.assignment.matrix;
    let schemes = cfg
        .scheme_list()
        .into_iter()
        .map(|scheme| {
            let r = apply_scheme(scheme, &inputs.group_marks, m, &inputs.assessments, &cfg.params)?;
            let summary = error_summary(q, &r.assigned)?.with_replicate(replicate);
            Ok(SchemeOutcome {
                scheme,
                assigned: r.assigned,
                summary,
                diagnostics: r.diagnostics,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReplicateOutcome {
        replicate,
        ideal: q.to_vec(),
        schemes,
        diagnostics: inputs.assignment.diagnostics,
    })
}

/// Runs every replicate (in parallel) and collects outcomes by replicate id.
pub fn run_scenario(cfg: &ExperimentConfig) -> Result<ScenarioRun> {
    cfg.validate()?;
    let results: Vec<Result<ReplicateOutcome>> = (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| {
            run_replicate(cfg, r).map_err(|e| HarnessError::Replicate {
                replicate: r,
                source: Box::new(e),
            })
        })
        .collect();
    let mut outcomes = Vec::with_capacity(results.len());
    let mut failure = None;
    for r in results {
        match r {
            Ok(o) => outcomes.push(o),
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    Ok(ScenarioRun {
        config: cfg.clone(),
        outcomes,
        failure,
    })
}

/// One sweep coordinate and its scenario.
#[derive(Debug)]
pub struct SweepPoint {
    pub value: usize,
    pub run: ScenarioRun,
}

#[derive(Debug, Default)]
pub struct Sweep {
    pub points: Vec<SweepPoint>,
    pub skipped: Vec<String>,
}

impl Sweep {
    pub fn point(&self, value: usize) -> Option<&ScenarioRun> {
        self.points.iter().find(|p| p.value == value).map(|p| &p.run)
    }

    pub fn failure(&self) -> Option<&HarnessError> {
        self.points.iter().find_map(|p| p.run.failure.as_ref())
    }
}

/// Group-size sweep with `rounds = m` (`rounds = 1` when one group holds
/// everybody). Values that do not divide the population are skipped.
pub fn sweep_group_size(cfg: &ExperimentConfig, m_values: &[usize]) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for &m in m_values {
        if m < 2 || !cfg.students.is_multiple_of(m) {
            sweep.skipped.push(format!(
                "skipping m = {m}: does not divide {} students into groups of at least 2",
                cfg.students
            ));
            continue;
        }
        let point = ExperimentConfig {
            group_size: m,
            rounds: if m == cfg.students { 1 } else { m },
            ..cfg.clone()
        };
        let run = run_scenario(&point)?;
        let failed = run.failure.is_some();
        sweep.points.push(SweepPoint { value: m, run });
        if failed {
            break;
        }
    }
    Ok(sweep)
}

/// Population sweep at the configured group size and rounds. Values not
/// divisible by the group size are skipped.
pub fn sweep_population(cfg: &ExperimentConfig, n_values: &[usize]) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for &n in n_values {
        if n == 0 || n % cfg.group_size != 0 {
            sweep.skipped.push(format!(
                "skipping n = {n}: not divisible by group size {}",
                cfg.group_size
            ));
            continue;
        }
        let point = ExperimentConfig {
            students: n,
            ..cfg.clone()
        };
        let run = run_scenario(&point)?;
        let failed = run.failure.is_some();
        sweep.points.push(SweepPoint { value: n, run });
        if failed {
            break;
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            students: 16,
            replicates: 3,
            ..Default::default()
        }
    }

    #[test]
    fn outcomes_are_in_replicate_order() {
        let run = run_scenario(&small()).unwrap();
        assert!(run.failure.is_none());
        let ids: Vec<u64> = run.outcomes.iter().map(|o| o.replicate).collect();
        assert_eq!(ids, vec![0, 1, 2]);
        for o in &run.outcomes {
            assert_eq!(o.schemes.len(), 6);
            assert!(o.schemes.iter().all(|s| s.summary.replicate_id == o.replicate));
        }
    }

    #[test]
    fn replicate_is_reproducible_in_isolation() {
        let run = run_scenario(&small()).unwrap();
        let again = run_replicate(&small(), 2).unwrap();
        assert_eq!(run.outcomes[2].ideal, again.ideal);
        assert_eq!(run.outcomes[2].schemes[5].assigned, again.schemes[5].assigned);
    }

    #[test]
    fn degenerate_population_has_zero_error() {
        let mut cfg = small();
        cfg.sd = 0.0;
        cfg.params.noise = Noise::noiseless();
        let run = run_scenario(&cfg).unwrap();
        for s in Scheme::ALL {
            let e = run.mean_errors(s).unwrap();
            assert!(e.e_max < 1e-9, "{s}: {e:?}");
        }
    }

    #[test]
    fn sweeps_skip_indivisible_points() {
        let cfg = ExperimentConfig {
            students: 12,
            replicates: 1,
            ..Default::default()
        };
        let sweep = sweep_group_size(&cfg, &[3, 5, 12]).unwrap();
        assert_eq!(sweep.points.iter().map(|p| p.value).collect::<Vec<_>>(), vec![3, 12]);
        assert_eq!(sweep.skipped.len(), 1);
        assert_eq!(sweep.point(12).unwrap().config.rounds, 1);
        assert_eq!(sweep.point(3).unwrap().config.rounds, 3);

        let sweep = sweep_population(&cfg, &[8, 10, 12]).unwrap();
        assert_eq!(sweep.points.len(), 2);
        assert_eq!(sweep.skipped.len(), 1);
    }

    #[test]
    fn single_group_sopp_gives_everyone_the_mean() {
        let cfg = ExperimentConfig {
            students: 8,
            replicates: 1,
            schemes: vec![Scheme::Sopp],
            ..Default::default()
        };
        let sweep = sweep_group_size(&cfg, &[8]).unwrap();
        let o = &sweep.point(8).unwrap().outcomes[0];
        let mean = o.ideal.iter().sum::<f64>() / 8.0;
        for &x in &o.scheme(Scheme::Sopp).unwrap().assigned {
            assert!((x - mean).abs() < 1e-9);
        }
    }
}
