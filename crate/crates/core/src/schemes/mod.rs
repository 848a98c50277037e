//! The six marking schemes and the assessment data they consume.
//!
//! Per-project auxiliary data is stored in the *local* indexing of each
//! project: position `k` of project `j` is the `k`-th entry of
//! [`ParticipationMatrix::members`]`(j)`, i.e. members in ascending student
//! order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::assignment::{GroupMarkVector, ParticipationMatrix};
use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;
use crate::population::NoiseModel;
use crate::scalar::Scalar;

mod peer;
mod pseudoinverse;
mod ranking;
mod reflexive;
mod simulate;
mod sopp;

pub use peer::normalised_peer_assessment;
pub use pseudoinverse::{pseudoinverse_marking, pseudoinverse_marking_with_tol};
pub use ranking::{peer_ranking, ranking_adjacency};
pub use reflexive::{mark_adjusted_reflexive, reflexive_accounts};
pub use simulate::simulate_assessments;
pub use sopp::sopp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Self-organised peer pressure: mean of the student's group marks.
    Sopp,
    /// Reflexive accounts mixed linearly with the group mark.
    Ra,
    /// Mark-adjusted reflexive accounts: reflexive marks split the mark pool.
    Mra,
    /// Normalised peer assessment.
    Npa,
    /// Peer ranking via the Perron vector of a pairwise-comparison matrix.
    Pr,
    /// Pseudoinverse marking.
    Pim,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Sopp,
        Scheme::Ra,
        Scheme::Mra,
        Scheme::Npa,
        Scheme::Pr,
        Scheme::Pim,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Scheme::Sopp => "SOPP",
            Scheme::Ra => "RA",
            Scheme::Mra => "MRA",
            Scheme::Npa => "NPA",
            Scheme::Pr => "PR",
            Scheme::Pim => "PiM",
        }
    }

    /// Auxiliary assessments the scheme consumes.
    pub fn requires(self) -> AssessmentKinds {
        match self {
            Scheme::Sopp | Scheme::Pim => AssessmentKinds::NONE,
            Scheme::Ra | Scheme::Mra => AssessmentKinds {
                reflexive: true,
                ..AssessmentKinds::NONE
            },
            Scheme::Npa => AssessmentKinds {
                peer: true,
                ..AssessmentKinds::NONE
            },
            Scheme::Pr => AssessmentKinds {
                rankings: true,
                ..AssessmentKinds::NONE
            },
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sopp" => Ok(Scheme::Sopp),
            "ra" => Ok(Scheme::Ra),
            "mra" => Ok(Scheme::Mra),
            "npa" => Ok(Scheme::Npa),
            "pr" => Ok(Scheme::Pr),
            "pim" => Ok(Scheme::Pim),
            _ => Err(Error::param("scheme", format!("unknown scheme `{s}`"))),
        }
    }
}

/// Which auxiliary assessments to simulate or require.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AssessmentKinds {
    pub reflexive: bool,
    pub peer: bool,
    pub rankings: bool,
}

impl AssessmentKinds {
    pub const NONE: Self = Self {
        reflexive: false,
        peer: false,
        rankings: false,
    };
    pub const ALL: Self = Self {
        reflexive: true,
        peer: true,
        rankings: true,
    };

    pub fn for_schemes(schemes: &[Scheme]) -> Self {
        schemes.iter().fold(Self::NONE, |acc, s| {
            let r = s.requires();
            Self {
                reflexive: acc.reflexive || r.reflexive,
                peer: acc.peer || r.peer,
                rankings: acc.rankings || r.rankings,
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams<T> {
    /// Weight of the group mark under RA.
    pub ra_alpha: T,
    /// Adjacency weight for "ranked below".
    pub pr_a: T,
    /// Adjacency weight for "ranked above".
    pub pr_b: T,
    /// Weight of the unadjusted group mark under PR.
    pub pr_alpha: T,
    pub noise: NoiseModel<T>,
    pub eigen_tol: T,
    pub eigen_max_iter: usize,
    /// Relative singular-value cut-off for PiM; `None` uses
    /// [`default_rank_tol`](crate::numerics::default_rank_tol).
    pub pinv_rank_tol: Option<T>,
}

impl<T: Scalar> Default for SchemeParams<T> {
    fn default() -> Self {
        Self {
            ra_alpha: T::lit(0.7),
            pr_a: T::lit(0.25),
            pr_b: T::one(),
            pr_alpha: T::lit(0.65),
            noise: NoiseModel::default(),
            eigen_tol: T::lit(1e-12).max(T::epsilon() * T::lit(100.0)),
            eigen_max_iter: 100_000,
            pinv_rank_tol: None,
        }
    }
}

impl<T: Scalar> SchemeParams<T> {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: T| v >= T::zero() && v <= T::one();
        if !unit(self.ra_alpha) {
            return Err(Error::param("ra_alpha", "must lie in [0, 1]"));
        }
        if !unit(self.pr_alpha) {
            return Err(Error::param("pr_alpha", "must lie in [0, 1]"));
        }
        if !(self.pr_a > T::zero() && self.pr_a.is_finite()) {
            return Err(Error::param("pr_a", "must be positive"));
        }
        if !(self.pr_b > T::zero() && self.pr_b.is_finite()) {
            return Err(Error::param("pr_b", "must be positive"));
        }
        if !(self.noise.half_range >= T::zero() && self.noise.half_range.is_finite()) {
            return Err(Error::param("noise_half_range", "must be finite and non-negative"));
        }
        if !(self.eigen_tol > T::zero()) {
            return Err(Error::param("eigen_tol", "must be positive"));
        }
        if self.eigen_max_iter == 0 {
            return Err(Error::param("eigen_max_iter", "must be at least 1"));
        }
        if let Some(tol) = self.pinv_rank_tol {
            if !(tol >= T::zero()) {
                return Err(Error::param("pinv_rank_tol", "must be non-negative"));
            }
        }
        Ok(())
    }
}

/// Reflexive-account marks `y_ij`, one per membership.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflexiveMarks<T> {
    per_project: Vec<Vec<T>>,
}

impl<T: Scalar> ReflexiveMarks<T> {
    /// `per_project[j][k]` is the mark of the `k`-th member of project `j`.
    pub fn new(m: &ParticipationMatrix, per_project: Vec<Vec<T>>) -> Result<Self> {
        if per_project.len() != m.n_projects() {
            return Err(Error::IncompleteAssessment(format!(
                "reflexive marks for {} of {} projects",
                per_project.len(),
                m.n_projects()
            )));
        }
        for (j, marks) in per_project.iter().enumerate() {
            if marks.len() != m.project_size(j) {
                return Err(Error::IncompleteAssessment(format!(
                    "project {j}: {} reflexive marks for {} members",
                    marks.len(),
                    m.project_size(j)
                )));
            }
            check_mark(marks.iter().copied(), "reflexive")?;
        }
        Ok(Self { per_project })
    }

    pub fn from_fn(m: &ParticipationMatrix, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let per_project = (0..m.n_projects())
            .map(|j| m.members(j).iter().map(|&i| f(i, j)).collect())
            .collect();
        Self::new(m, per_project)
    }

    /// Sparse `(student, project, mark)` records; every membership needs
    /// exactly one record.
    pub fn from_entries(
        m: &ParticipationMatrix,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        let mut slots: Vec<Vec<Option<T>>> =
            (0..m.n_projects()).map(|j| vec![None; m.project_size(j)]).collect();
        for (i, j, y) in entries {
            let k = local(m, j, i)?;
            if slots[j][k].replace(y).is_some() {
                return Err(Error::Shape(format!(
                    "duplicate reflexive mark for student {i} on project {j}"
                )));
            }
        }
        let mut missing = Vec::new();
        let per_project = slots
            .into_iter()
            .enumerate()
            .map(|(j, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(k, y)| {
                        y.unwrap_or_else(|| {
                            missing.push((m.members(j)[k], j));
                            T::zero()
                        })
                    })
                    .collect()
            })
            .collect();
        if !missing.is_empty() {
            return Err(Error::IncompleteAssessment(format!(
                "{} reflexive marks missing, first (student, project) = {:?}",
                missing.len(),
                missing[0]
            )));
        }
        Self::new(m, per_project)
    }

    pub fn for_project(&self, j: usize) -> &[T] {
        &self.per_project[j]
    }

    fn check_against(&self, m: &ParticipationMatrix) -> Result<()> {
        let ok = self.per_project.len() == m.n_projects()
            && self
                .per_project
                .iter()
                .enumerate()
                .all(|(j, v)| v.len() == m.project_size(j));
        if ok {
            Ok(())
        } else {
            Err(Error::IncompleteAssessment(
                "reflexive marks do not match the participation matrix".into(),
            ))
        }
    }
}

/// Peer marks: for each project an `n_j × n_j` matrix, entry `(k, i)` the
/// mark rater `k` gives target `i`. The diagonal is ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct PeerMarks<T> {
    per_project: Vec<DenseMatrix<T>>,
}

impl<T: Scalar> PeerMarks<T> {
    pub fn new(m: &ParticipationMatrix, per_project: Vec<DenseMatrix<T>>) -> Result<Self> {
        if per_project.len() != m.n_projects() {
            return Err(Error::IncompleteAssessment(format!(
                "peer marks for {} of {} projects",
                per_project.len(),
                m.n_projects()
            )));
        }
        for (j, s) in per_project.iter().enumerate() {
            let n = m.project_size(j);
            if s.rows() != n || s.cols() != n {
                return Err(Error::IncompleteAssessment(format!(
                    "project {j}: peer matrix is {}x{}, group has {n} members",
                    s.rows(),
                    s.cols()
                )));
            }
            let off_diagonal = (0..n).flat_map(|k| (0..n).filter(move |&i| i != k).map(move |i| (k, i)));
            check_mark(off_diagonal.map(|ki| s[ki]), "peer")?;
        }
        Ok(Self { per_project })
    }

    /// Sparse `(project, rater, target, mark)` records in student indices.
    /// Every ordered pair of distinct groupmates needs exactly one record;
    /// self-ratings are rejected.
    pub fn from_entries(
        m: &ParticipationMatrix,
        entries: impl IntoIterator<Item = (usize, usize, usize, T)>,
    ) -> Result<Self> {
        let mut slots: Vec<Vec<Option<T>>> = (0..m.n_projects())
            .map(|j| vec![None; m.project_size(j) * m.project_size(j)])
            .collect();
        for (j, rater, target, mark) in entries {
            if rater == target {
                return Err(Error::Domain(format!(
                    "student {rater} rates themselves on project {j}"
                )));
            }
            let (k, i) = (local(m, j, rater)?, local(m, j, target)?);
            let n = m.project_size(j);
            if slots[j][k * n + i].replace(mark).is_some() {
                return Err(Error::Shape(format!(
                    "duplicate peer mark {rater} -> {target} on project {j}"
                )));
            }
        }
        let mut per_project = Vec::with_capacity(m.n_projects());
        for (j, row) in slots.into_iter().enumerate() {
            let n = m.project_size(j);
            let mut data = Vec::with_capacity(n * n);
            for (idx, v) in row.into_iter().enumerate() {
                let (k, i) = (idx / n, idx % n);
                match v {
                    Some(v) => data.push(v),
                    None if k == i => data.push(T::zero()),
                    None => {
                        return Err(Error::IncompleteAssessment(format!(
                            "project {j}: no peer mark from student {} for student {}",
                            m.members(j)[k],
                            m.members(j)[i]
                        )))
                    }
                }
            }
            per_project.push(DenseMatrix::new(n, n, data)?);
        }
        Self::new(m, per_project)
    }

    pub fn for_project(&self, j: usize) -> &DenseMatrix<T> {
        &self.per_project[j]
    }

    fn check_against(&self, m: &ParticipationMatrix) -> Result<()> {
        let ok = self.per_project.len() == m.n_projects()
            && self
                .per_project
                .iter()
                .enumerate()
                .all(|(j, s)| s.rows() == m.project_size(j));
        if ok {
            Ok(())
        } else {
            Err(Error::IncompleteAssessment(
                "peer marks do not match the participation matrix".into(),
            ))
        }
    }
}

/// Strict peer rankings: `per_project[j][k]` lists the local indices of
/// rater `k`'s groupmates, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeerRankings {
    per_project: Vec<Vec<Vec<usize>>>,
}

impl PeerRankings {
    pub fn new(m: &ParticipationMatrix, per_project: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if per_project.len() != m.n_projects() {
            return Err(Error::IncompleteAssessment(format!(
                "rankings for {} of {} projects",
                per_project.len(),
                m.n_projects()
            )));
        }
        for (j, lists) in per_project.iter().enumerate() {
            let n = m.project_size(j);
            if lists.len() != n {
                return Err(Error::IncompleteAssessment(format!(
                    "project {j}: {} rankings for {n} members",
                    lists.len()
                )));
            }
            for (k, list) in lists.iter().enumerate() {
                let mut seen = vec![false; n];
                for &i in list {
                    if i >= n || i == k || std::mem::replace(&mut seen[i], true) {
                        return Err(Error::InvalidRanking(format!(
                            "project {j}: ranking of member {k} must list each groupmate once and exclude the rater"
                        )));
                    }
                }
                if list.len() != n - 1 {
                    return Err(Error::InvalidRanking(format!(
                        "project {j}: ranking of member {k} covers {} of {} groupmates",
                        list.len(),
                        n - 1
                    )));
                }
            }
        }
        Ok(Self { per_project })
    }

    /// Sparse `(project, rater, target, position)` records in student
    /// indices; lower positions are better and must be distinct per rater.
    pub fn from_entries(
        m: &ParticipationMatrix,
        entries: impl IntoIterator<Item = (usize, usize, usize, i64)>,
    ) -> Result<Self> {
        let mut raw: Vec<Vec<Vec<(i64, usize)>>> = (0..m.n_projects())
            .map(|j| vec![Vec::new(); m.project_size(j)])
            .collect();
        for (j, rater, target, pos) in entries {
            if rater == target {
                return Err(Error::InvalidRanking(format!(
                    "student {rater} ranks themselves on project {j}"
                )));
            }
            let (k, i) = (local(m, j, rater)?, local(m, j, target)?);
            raw[j][k].push((pos, i));
        }
        let mut per_project = Vec::with_capacity(raw.len());
        for (j, lists) in raw.into_iter().enumerate() {
            let mut out = Vec::with_capacity(lists.len());
            for (k, mut list) in lists.into_iter().enumerate() {
                list.sort_unstable();
                if list.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::InvalidRanking(format!(
                        "project {j}: student {} gives two groupmates the same position",
                        m.members(j)[k]
                    )));
                }
                out.push(list.into_iter().map(|(_, i)| i).collect());
            }
            per_project.push(out);
        }
        Self::new(m, per_project)
    }

    pub fn for_project(&self, j: usize) -> &[Vec<usize>] {
        &self.per_project[j]
    }

    fn check_against(&self, m: &ParticipationMatrix) -> Result<()> {
        let ok = self.per_project.len() == m.n_projects()
            && self
                .per_project
                .iter()
                .enumerate()
                .all(|(j, r)| r.len() == m.project_size(j));
        if ok {
            Ok(())
        } else {
            Err(Error::IncompleteAssessment(
                "rankings do not match the participation matrix".into(),
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AssessmentBundle<T> {
    pub reflexive: Option<ReflexiveMarks<T>>,
    pub peer: Option<PeerMarks<T>>,
    pub rankings: Option<PeerRankings>,
}

impl<T> AssessmentBundle<T> {
    pub fn empty() -> Self {
        Self {
            reflexive: None,
            peer: None,
            rankings: None,
        }
    }

    pub fn available(&self) -> AssessmentKinds {
        AssessmentKinds {
            reflexive: self.reflexive.is_some(),
            peer: self.peer.is_some(),
            rankings: self.rankings.is_some(),
        }
    }
}

/// Output of a marking scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkResult<T> {
    /// `x_i`, one per student.
    pub assigned: Vec<T>,
    /// `r_ij` keyed by `(student, project)`; empty for global schemes.
    pub per_project: BTreeMap<(usize, usize), T>,
    pub scheme: Scheme,
    pub params: SchemeParams<T>,
    pub diagnostics: Vec<String>,
}

/// Runs `scheme`, checking that `bundle` carries what it needs.
pub fn apply_scheme<T: Scalar>(
    scheme: Scheme,
    w: &GroupMarkVector<T>,
    m: &ParticipationMatrix,
    bundle: &AssessmentBundle<T>,
    params: &SchemeParams<T>,
) -> Result<MarkResult<T>> {
    params.validate()?;
    let need = scheme.requires();
    let mut missing = Vec::new();
    if need.reflexive && bundle.reflexive.is_none() {
        missing.push("reflexive marks");
    }
    if need.peer && bundle.peer.is_none() {
        missing.push("peer marks");
    }
    if need.rankings && bundle.rankings.is_none() {
        missing.push("peer rankings");
    }
    if !missing.is_empty() {
        return Err(Error::MissingAssessment {
            scheme: scheme.label().to_string(),
            missing,
        });
    }
    let mut result = match scheme {
        Scheme::Sopp => sopp(w, m),
        Scheme::Ra => reflexive_accounts(w, m, bundle.reflexive.as_ref().unwrap(), params.ra_alpha),
        Scheme::Mra => mark_adjusted_reflexive(w, m, bundle.reflexive.as_ref().unwrap()),
        Scheme::Npa => normalised_peer_assessment(w, m, bundle.peer.as_ref().unwrap()),
        Scheme::Pr => peer_ranking(w, m, bundle.rankings.as_ref().unwrap(), params),
        Scheme::Pim => pseudoinverse_marking_with_tol(w, m, params.pinv_rank_tol),
    }?;
    result.params = *params;
    Ok(result)
}

fn check_mark<T: Scalar>(marks: impl IntoIterator<Item = T>, what: &str) -> Result<()> {
    for y in marks {
        if !y.is_finite() {
            return Err(Error::Domain(format!("{what} marks must be finite")));
        }
        if y < T::zero() {
            return Err(Error::Domain(format!("{what} marks must be non-negative, got {y}")));
        }
    }
    Ok(())
}

fn local(m: &ParticipationMatrix, project: usize, student: usize) -> Result<usize> {
    if project >= m.n_projects() {
        return Err(Error::Shape(format!("unknown project {project}")));
    }
    m.local_index(project, student).ok_or_else(|| {
        Error::Shape(format!(
            "student {student} is not a member of project {project}"
        ))
    })
}

/// Averages per-project components (aligned with members) into `x_i`.
fn aggregate<T: Scalar>(
    m: &ParticipationMatrix,
    components: Vec<Vec<T>>,
    scheme: Scheme,
    diagnostics: Vec<String>,
) -> MarkResult<T> {
    let mut per_project = BTreeMap::new();
    for (j, r) in components.iter().enumerate() {
        for (&i, &v) in m.members(j).iter().zip(r) {
            per_project.insert((i, j), v);
        }
    }
    let assigned = (0..m.n_students())
        .map(|i| {
            let projects = m.projects_of(i);
            projects
                .iter()
                .map(|&j| components[j][m.local_index(j, i).expect("member")])
                .sum::<T>()
                / T::from_count(projects.len())
        })
        .collect();
    MarkResult {
        assigned,
        per_project,
        scheme,
        params: SchemeParams::default(),
        diagnostics,
    }
}

fn check_marks<T: Scalar>(w: &GroupMarkVector<T>, m: &ParticipationMatrix) -> Result<()> {
    w.check_against(m)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::population::StudentPopulation;

    pub fn four_cycle() -> ParticipationMatrix {
        ParticipationMatrix::from_rows(&[[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]])
            .unwrap()
    }

    pub fn one_group(n: usize) -> ParticipationMatrix {
        ParticipationMatrix::from_memberships(n, vec![(0..n).collect()]).unwrap()
    }

    pub fn pop(marks: &[f64]) -> StudentPopulation<f64> {
        StudentPopulation::from_marks(marks.to_vec()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::assignment::group_marks;

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.label().parse::<Scheme>().unwrap(), s);
        }
        assert!("IWF".parse::<Scheme>().is_err());
    }

    #[test]
    fn params_validation() {
        let ok = SchemeParams::<f64>::default();
        ok.validate().unwrap();
        assert_eq!(ok.ra_alpha, 0.7);
        assert_eq!((ok.pr_a, ok.pr_b, ok.pr_alpha), (0.25, 1.0, 0.65));
        assert_eq!(ok.noise.half_range, 16.0);
        for bad in [
            SchemeParams { ra_alpha: 1.5, ..ok },
            SchemeParams { pr_alpha: -0.1, ..ok },
            SchemeParams { pr_a: 0.0, ..ok },
            SchemeParams { pr_b: -1.0, ..ok },
            SchemeParams { eigen_max_iter: 0, ..ok },
        ] {
            assert!(bad.validate().is_err());
        }
    }

    #[test]
    fn missing_assessments_are_reported() {
        let m = four_cycle();
        let w = group_marks(&pop(&[40.0, 50.0, 60.0, 70.0]), &m).unwrap();
        let params = SchemeParams::default();
        let err = apply_scheme(Scheme::Npa, &w, &m, &AssessmentBundle::empty(), &params).unwrap_err();
        assert_eq!(
            err,
            Error::MissingAssessment {
                scheme: "NPA".into(),
                missing: vec!["peer marks"]
            }
        );
        assert_eq!(err.kind(), "unsupported_scheme_for_data");
        assert!(apply_scheme(Scheme::Sopp, &w, &m, &AssessmentBundle::empty(), &params).is_ok());
        assert!(apply_scheme(Scheme::Pim, &w, &m, &AssessmentBundle::empty(), &params).is_ok());
    }

    #[test]
    fn reflexive_entries_validation() {
        let m = four_cycle();
        let full: Vec<_> = (0..4)
            .flat_map(|j| m.members(j).iter().map(move |&i| (i, j, 50.0)).collect::<Vec<_>>())
            .collect();
        assert!(ReflexiveMarks::from_entries(&m, full.clone()).is_ok());
        assert!(matches!(
            ReflexiveMarks::from_entries(&m, full[1..].to_vec()),
            Err(Error::IncompleteAssessment(_))
        ));
        let mut neg = full.clone();
        neg[0].2 = -1.0;
        assert!(matches!(ReflexiveMarks::from_entries(&m, neg), Err(Error::Domain(_))));
        let mut outsider = full;
        outsider[0] = (3, 0, 1.0);
        assert!(matches!(
            ReflexiveMarks::from_entries(&m, outsider),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn peer_and_ranking_entries_validation() {
        let m = one_group(3);
        let mut marks = Vec::new();
        for k in 0..3 {
            for i in 0..3 {
                if i != k {
                    marks.push((0, k, i, 10.0));
                }
            }
        }
        assert!(PeerMarks::from_entries(&m, marks.clone()).is_ok());
        let mut selfish = marks.clone();
        selfish.push((0, 1, 1, 100.0));
        assert!(matches!(PeerMarks::from_entries(&m, selfish), Err(Error::Domain(_))));
        assert!(matches!(
            PeerMarks::from_entries(&m, marks[1..].to_vec()),
            Err(Error::IncompleteAssessment(_))
        ));

        let ranks = vec![
            (0, 0, 1, 1),
            (0, 0, 2, 2),
            (0, 1, 0, 1),
            (0, 1, 2, 2),
            (0, 2, 0, 2),
            (0, 2, 1, 1),
        ];
        let r = PeerRankings::from_entries(&m, ranks.clone()).unwrap();
        assert_eq!(r.for_project(0)[2], vec![1, 0]);
        let mut tie = ranks.clone();
        tie[1].3 = 1;
        assert!(matches!(PeerRankings::from_entries(&m, tie), Err(Error::InvalidRanking(_))));
        let mut short = ranks.clone();
        short.pop();
        assert!(matches!(PeerRankings::from_entries(&m, short), Err(Error::InvalidRanking(_))));
        assert!(PeerRankings::new(&m, vec![vec![vec![1, 2], vec![0, 1], vec![0, 1]]]).is_err());
    }
}
