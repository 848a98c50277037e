//! Real (or exported) cohorts as a directory of CSV files.
//!
//! | file              | columns                                          | required |
//! |-------------------|--------------------------------------------------|----------|
//! | `memberships.csv` | `project_id,student_id`                          | yes      |
//! | `group_marks.csv` | `project_id,mark`                                | yes      |
//! | `reflexive.csv`   | `student_id,project_id,mark`                     | no       |
//! | `peer.csv`        | `project_id,rater_id,target_id,mark`             | no       |
//! | `rankings.csv`    | `project_id,rater_id,target_id,rank_position`    | no       |
//!
//! Projects are ordered as in `group_marks.csv`, students by first
//! appearance in `memberships.csv`. Lower rank positions are better.

use std::collections::HashMap;
use std::path::Path;

use groupmark_core::{
    apply_scheme, Assessments, GroupMarks, Marks, Params, ParticipationMatrix, PeerMarks,
    PeerRankings, ReflexiveMarks, Scheme,
};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::experiment::ReplicateInputs;
use crate::output::{fmt_g6, write_with, MARKS_HEADER};

pub const MEMBERSHIPS: &str = "memberships.csv";
pub const GROUP_MARKS: &str = "group_marks.csv";
pub const REFLEXIVE: &str = "reflexive.csv";
pub const PEER: &str = "peer.csv";
pub const RANKINGS: &str = "rankings.csv";
pub const IDEAL_MARKS: &str = "ideal_marks.csv";

#[derive(Debug, Serialize, Deserialize)]
struct MembershipRow {
    project_id: String,
    student_id: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct GroupMarkRow {
    project_id: String,
    mark: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ReflexiveRow {
    student_id: String,
    project_id: String,
    mark: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct PeerRow {
    project_id: String,
    rater_id: String,
    target_id: String,
    mark: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct RankingRow {
    project_id: String,
    rater_id: String,
    target_id: String,
    rank_position: i64,
}

#[derive(Debug, Serialize)]
struct IdealRow<'a> {
    student_id: &'a str,
    ideal_mark: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CohortData {
    pub student_ids: Vec<String>,
    pub project_ids: Vec<String>,
    pub matrix: ParticipationMatrix,
    pub group_marks: GroupMarks,
    pub assessments: Assessments,
}

fn read_rows<R: DeserializeOwned>(path: &Path) -> Result<Vec<R>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| HarnessError::csv(path, e))?;
    reader
        .deserialize()
        .collect::<csv::Result<Vec<R>>>()
        .map_err(|e| HarnessError::csv(path, e))
}

fn write_rows<R: Serialize>(path: &Path, rows: impl IntoIterator<Item = R>) -> Result<()> {
    write_with(path, |w| {
        for row in rows {
            w.serialize(row)?;
        }
        Ok(())
    })
}

struct Index<'a> {
    students: HashMap<&'a str, usize>,
    projects: HashMap<&'a str, usize>,
}

impl Index<'_> {
    fn student(&self, id: &str, file: &str) -> Result<usize> {
        self.students
            .get(id)
            .copied()
            .ok_or_else(|| HarnessError::Cohort(format!("{file}: unknown student `{id}`")))
    }

    fn project(&self, id: &str, file: &str) -> Result<usize> {
        self.projects
            .get(id)
            .copied()
            .ok_or_else(|| HarnessError::Cohort(format!("{file}: unknown project `{id}`")))
    }
}

impl CohortData {
    /// Reads a cohort directory. Optional files that are absent leave the
    /// corresponding assessment empty.
    pub fn load(dir: &Path) -> Result<Self> {
        let marks: Vec<GroupMarkRow> = read_rows(&dir.join(GROUP_MARKS))?;
        let mut project_ids = Vec::with_capacity(marks.len());
        let mut projects = HashMap::new();
        for (j, row) in marks.iter().enumerate() {
            if projects.insert(row.project_id.clone(), j).is_some() {
                return Err(HarnessError::Cohort(format!(
                    "{GROUP_MARKS}: project `{}` listed twice",
                    row.project_id
                )));
            }
            project_ids.push(row.project_id.clone());
        }
        let group_marks = GroupMarks::new(marks.iter().map(|r| r.mark).collect())?;

        let rows: Vec<MembershipRow> = read_rows(&dir.join(MEMBERSHIPS))?;
        let mut student_ids: Vec<String> = Vec::new();
        let mut students: HashMap<String, usize> = HashMap::new();
        let mut members = vec![Vec::new(); project_ids.len()];
        for row in &rows {
            let j = *projects.get(&row.project_id).ok_or_else(|| {
                HarnessError::Cohort(format!(
                    "{MEMBERSHIPS}: project `{}` has no group mark",
                    row.project_id
                ))
            })?;
            let i = *students.entry(row.student_id.clone()).or_insert_with(|| {
                student_ids.push(row.student_id.clone());
                student_ids.len() - 1
            });
            if members[j].contains(&i) {
                return Err(HarnessError::Cohort(format!(
                    "{MEMBERSHIPS}: student `{}` listed twice in project `{}`",
                    row.student_id, row.project_id
                )));
            }
            members[j].push(i);
        }
        let matrix = ParticipationMatrix::from_memberships(student_ids.len(), members)?;

        let index = Index {
            students: student_ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect(),
            projects: project_ids.iter().enumerate().map(|(j, p)| (p.as_str(), j)).collect(),
        };
        let mut assessments = Assessments::empty();

        let path = dir.join(REFLEXIVE);
        if path.exists() {
            let rows: Vec<ReflexiveRow> = read_rows(&path)?;
            let entries = rows
                .iter()
                .map(|r| {
                    Ok((
                        index.student(&r.student_id, REFLEXIVE)?,
                        index.project(&r.project_id, REFLEXIVE)?,
                        r.mark,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            assessments.reflexive = Some(ReflexiveMarks::from_entries(&matrix, entries)?);
        }

        let path = dir.join(PEER);
        if path.exists() {
            let rows: Vec<PeerRow> = read_rows(&path)?;
            let entries = rows
                .iter()
                .map(|r| {
                    Ok((
                        index.project(&r.project_id, PEER)?,
                        index.student(&r.rater_id, PEER)?,
                        index.student(&r.target_id, PEER)?,
                        r.mark,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            assessments.peer = Some(PeerMarks::from_entries(&matrix, entries)?);
        }

        let path = dir.join(RANKINGS);
        if path.exists() {
            let rows: Vec<RankingRow> = read_rows(&path)?;
            let entries = rows
                .iter()
                .map(|r| {
                    Ok((
                        index.project(&r.project_id, RANKINGS)?,
                        index.student(&r.rater_id, RANKINGS)?,
                        index.student(&r.target_id, RANKINGS)?,
                        r.rank_position,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            assessments.rankings = Some(PeerRankings::from_entries(&matrix, entries)?);
        }

        Ok(Self {
            student_ids,
            project_ids,
            matrix,
            group_marks,
            assessments,
        })
    }

    /// The cohort behind one simulated replicate, with ids `s<i>` and `p<j>`.
    pub fn from_replicate(inputs: &ReplicateInputs) -> Self {
        let m = &inputs.assignment.matrix;
        Self {
            student_ids: (0..m.n_students()).map(|i| format!("s{i}")).collect(),
            project_ids: (0..m.n_projects()).map(|j| format!("p{j}")).collect(),
            matrix: m.clone(),
            group_marks: inputs.group_marks.clone(),
            assessments: inputs.assessments.clone(),
        }
    }

    /// Writes the cohort files. Memberships are student-major so that
    /// reloading preserves student order; marks keep full precision.
    pub fn export(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        let m = &self.matrix;
        let sid = |i: usize| self.student_ids[i].clone();
        let pid = |j: usize| self.project_ids[j].clone();

        write_rows(
            &dir.join(MEMBERSHIPS),
            (0..m.n_students()).flat_map(|i| {
                m.projects_of(i).iter().map(move |&j| MembershipRow {
                    project_id: pid(j),
                    student_id: sid(i),
                })
            }),
        )?;
        write_rows(
            &dir.join(GROUP_MARKS),
            (0..m.n_projects()).map(|j| GroupMarkRow {
                project_id: pid(j),
                mark: self.group_marks[j],
            }),
        )?;
        if let Some(y) = &self.assessments.reflexive {
            write_rows(
                &dir.join(REFLEXIVE),
                (0..m.n_students()).flat_map(|i| {
                    m.projects_of(i).iter().map(move |&j| ReflexiveRow {
                        student_id: sid(i),
                        project_id: pid(j),
                        mark: y.for_project(j)[m.local_index(j, i).expect("member")],
                    })
                }),
            )?;
        }
        if let Some(s) = &self.assessments.peer {
            let mut rows = Vec::new();
            for j in 0..m.n_projects() {
                let members = m.members(j);
                let s = s.for_project(j);
                for (k, &rater) in members.iter().enumerate() {
                    for (i, &target) in members.iter().enumerate() {
                        if i != k {
                            rows.push(PeerRow {
                                project_id: pid(j),
                                rater_id: sid(rater),
                                target_id: sid(target),
                                mark: s[(k, i)],
                            });
                        }
                    }
                }
            }
            write_rows(&dir.join(PEER), rows)?;
        }
        if let Some(r) = &self.assessments.rankings {
            let mut rows = Vec::new();
            for j in 0..m.n_projects() {
                let members = m.members(j);
                for (k, list) in r.for_project(j).iter().enumerate() {
                    for (pos, &i) in list.iter().enumerate() {
                        rows.push(RankingRow {
                            project_id: pid(j),
                            rater_id: sid(members[k]),
                            target_id: sid(members[i]),
                            rank_position: pos as i64 + 1,
                        });
                    }
                }
            }
            write_rows(&dir.join(RANKINGS), rows)?;
        }
        Ok(())
    }

    pub fn mark(&self, scheme: Scheme, params: &Params) -> Result<Marks> {
        Ok(apply_scheme(
            scheme,
            &self.group_marks,
            &self.matrix,
            &self.assessments,
            params,
        )?)
    }

    /// `student_id,assigned_mark,project_id,project_mark`, one row per
    /// membership; global schemes leave the project columns empty.
    pub fn write_marks(&self, path: &Path, result: &Marks) -> Result<()> {
        let m = &self.matrix;
        write_with(path, |w| {
            w.write_record(MARKS_HEADER)?;
            for (i, &x) in result.assigned.iter().enumerate() {
                let sid = self.student_ids[i].as_str();
                let x = fmt_g6(x);
                if result.per_project.is_empty() {
                    w.write_record([sid, &x, "", ""])?;
                    continue;
                }
                for &j in m.projects_of(i) {
                    let r = result.per_project.get(&(i, j)).copied();
                    let r = r.map(fmt_g6).unwrap_or_default();
                    w.write_record([sid, &x, &self.project_ids[j], &r])?;
                }
            }
            Ok(())
        })
    }
}

/// Applies `scheme` to a cohort on disk.
pub fn ingest_and_mark(dir: &Path, scheme: Scheme, params: &Params) -> Result<(CohortData, Marks)> {
    let cohort = CohortData::load(dir)?;
    let marks = cohort.mark(scheme, params)?;
    Ok((cohort, marks))
}

/// Exports a simulated replicate as a cohort plus `ideal_marks.csv`.
pub fn export_replicate(inputs: &ReplicateInputs, dir: &Path) -> Result<CohortData> {
    let cohort = CohortData::from_replicate(inputs);
    cohort.export(dir)?;
    write_rows(
        &dir.join(IDEAL_MARKS),
        cohort
            .student_ids
            .iter()
            .zip(inputs.population.ideal_marks())
            .map(|(s, &q)| IdealRow {
                student_id: s,
                ideal_mark: q,
            }),
    )?;
    Ok(cohort)
}
