//! Project groups and the participation matrix.
//!
//! Rows of the participation matrix are projects, columns are students.
//! The matrix is stored sparsely as per-project member lists (ascending
//! student index) plus the transposed per-student project lists.

use std::io::{BufRead, Write};

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;
use crate::population::{SeedStreams, StreamKind, StudentPopulation};
use crate::scalar::Scalar;

/// Default number of restarts per round in [`assign_groups`].
pub const DEFAULT_SHUFFLE_BUDGET: usize = 1000;

/// Restarts without a better round after which the search for that round
/// stops early.
pub const SHUFFLE_PATIENCE: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParticipationMatrix {
    n_students: usize,
    members: Vec<Vec<usize>>,
    projects_of: Vec<Vec<usize>>,
    rounds: Option<usize>,
}

impl ParticipationMatrix {
    /// Builds the matrix from per-project member lists. Every project needs
    /// at least one member and every student at least one project.
    pub fn from_memberships(n_students: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        if n_students == 0 {
            return Err(Error::EmptyPopulation);
        }
        let mut projects_of = vec![Vec::new(); n_students];
        let mut members = members;
        for (j, group) in members.iter_mut().enumerate() {
            if group.is_empty() {
                return Err(Error::Coverage(format!("project {j} has no members")));
            }
            group.sort_unstable();
            if group.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Shape(format!("project {j} lists a student twice")));
            }
            for &i in group.iter() {
                if i >= n_students {
                    return Err(Error::Shape(format!(
                        "project {j} references student {i}, but there are {n_students} students"
                    )));
                }
                projects_of[i].push(j);
            }
        }
        if let Some(i) = projects_of.iter().position(Vec::is_empty) {
            return Err(Error::Coverage(format!(
                "student {i} does not participate in any project"
            )));
        }
        Ok(Self {
            n_students,
            members,
            projects_of,
            rounds: None,
        })
    }

    /// Builds the matrix from dense 0/1 rows (one row per project).
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n_students = rows.first().map_or(0, |r| r.as_ref().len());
        let mut members = Vec::with_capacity(rows.len());
        for (j, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_students {
                return Err(Error::Shape(format!(
                    "row {j} has {} entries, expected {n_students}",
                    row.len()
                )));
            }
            let mut group = Vec::new();
            for (i, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 => group.push(i),
                    other => {
                        return Err(Error::Domain(format!(
                            "entry ({j}, {i}) is {other}, expected 0 or 1"
                        )))
                    }
                }
            }
            members.push(group);
        }
        Self::from_memberships(n_students, members)
    }

    fn with_rounds(mut self, rounds: usize) -> Self {
        self.rounds = Some(rounds);
        self
    }

    pub fn n_projects(&self) -> usize {
        self.members.len()
    }

    pub fn n_students(&self) -> usize {
        self.n_students
    }

    /// Members of project `j`, ascending.
    pub fn members(&self, j: usize) -> &[usize] {
        &self.members[j]
    }

    /// Projects of student `i`, ascending.
    pub fn projects_of(&self, i: usize) -> &[usize] {
        &self.projects_of[i]
    }

    /// `n_j`, the row sum.
    pub fn project_size(&self, j: usize) -> usize {
        self.members[j].len()
    }

    /// `n_i`, the column sum.
    pub fn projects_per_student(&self, i: usize) -> usize {
        self.projects_of[i].len()
    }

    /// Number of rounds when the matrix came from [`assign_groups`].
    pub fn rounds(&self) -> Option<usize> {
        self.rounds
    }

    pub fn contains(&self, project: usize, student: usize) -> bool {
        self.members[project].binary_search(&student).is_ok()
    }

    /// Position of `student` within the member list of `project`.
    pub fn local_index(&self, project: usize, student: usize) -> Option<usize> {
        self.members[project].binary_search(&student).ok()
    }

    pub fn entry(&self, project: usize, student: usize) -> u8 {
        u8::from(self.contains(project, student))
    }

    pub fn to_dense<T: Scalar>(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.n_projects(), self.n_students);
        for (j, group) in self.members.iter().enumerate() {
            for &i in group {
                m[(j, i)] = T::one();
            }
        }
        m
    }

    /// Number of distinct co-members of each student over all projects.
    pub fn distinct_partners(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n_students];
        self.projects_of
            .iter()
            .enumerate()
            .map(|(i, projects)| {
                let mut partners = Vec::new();
                for &j in projects {
                    for &k in &self.members[j] {
                        if k != i && !seen[k] {
                            seen[k] = true;
                            partners.push(k);
                        }
                    }
                }
                for &k in &partners {
                    seen[k] = false;
                }
                partners.len()
            })
            .collect()
    }

    /// Writes the long-form edge list `project_id,student_id`.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "project_id,student_id")?;
        for (j, group) in self.members.iter().enumerate() {
            for &i in group {
                writeln!(out, "{j},{i}")?;
            }
        }
        Ok(())
    }

    /// Reads an edge list written by [`write_edge_list`](Self::write_edge_list).
    /// Ids must be dense zero-based integers.
    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Shape("empty edge list".into()))?
            .map_err(|e| Error::Shape(e.to_string()))?;
        let cols: Vec<_> = header.split(',').map(str::trim).collect();
        if cols != ["project_id", "student_id"] {
            return Err(Error::Shape(format!("unexpected edge list header `{header}`")));
        }
        let mut edges = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::Shape(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',').map(str::trim);
            let parse = |s: Option<&str>| -> Result<usize> {
                s.and_then(|s| s.parse().ok()).ok_or_else(|| {
                    Error::Shape(format!("line {}: malformed edge `{line}`", lineno + 2))
                })
            };
            let j = parse(parts.next())?;
            let i = parse(parts.next())?;
            edges.push((j, i));
        }
        let n_projects = edges.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let n_students = edges.iter().map(|e| e.1 + 1).max().unwrap_or(0);
        let mut members = vec![Vec::new(); n_projects];
        for (j, i) in edges {
            members[j].push(i);
        }
        Self::from_memberships(n_students, members)
    }
}

/// Output of [`assign_groups`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub matrix: ParticipationMatrix,
    /// Co-memberships beyond the first, summed over all student pairs.
    pub repeated_pairs: usize,
    pub diagnostics: Vec<String>,
}

/// Splits `n` students into groups of `group_size` for each of `rounds`
/// rounds, trying to avoid repeated partners.
pub fn assign_groups(n: usize, group_size: usize, rounds: usize, seed: u64) -> Result<Assignment> {
    assign_groups_in(
        &SeedStreams::new(seed),
        n,
        group_size,
        rounds,
        DEFAULT_SHUFFLE_BUDGET,
    )
}

/// As [`assign_groups`], drawing from the grouping substream of `streams`.
///
/// Each round starts from a random shuffle cut into consecutive groups,
/// then swaps students between groups while that lowers the number of
/// already-met pairs. Up to `budget` restarts are tried per round and the
/// round with the fewest repeats is kept; a round also stops after
/// [`SHUFFLE_PATIENCE`] restarts without improvement.
pub fn assign_groups_in(
    streams: &SeedStreams,
    n: usize,
    group_size: usize,
    rounds: usize,
    budget: usize,
) -> Result<Assignment> {
    if n == 0 {
        return Err(Error::EmptyPopulation);
    }
    if group_size < 2 {
        return Err(Error::param("group_size", "must be at least 2"));
    }
    if rounds == 0 {
        return Err(Error::param("rounds", "must be at least 1"));
    }
    if !n.is_multiple_of(group_size) {
        return Err(Error::Indivisible {
            students: n,
            group_size,
        });
    }
    let budget = budget.max(1);
    let mut diagnostics = Vec::new();
    if (group_size - 1) * rounds > n - 1 {
        diagnostics.push(format!(
            "warning: {rounds} rounds in groups of {group_size} need {} distinct partners \
             per student but only {} exist; repeated partners are unavoidable",
            (group_size - 1) * rounds,
            n - 1
        ));
    }

    let mut rng = streams.rng(StreamKind::Grouping);
    let mut met = PairCounts::new(n);
    let mut members = Vec::with_capacity(rounds * n / group_size);
    let mut order: Vec<usize> = (0..n).collect();

    for _ in 0..rounds {
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut stale = 0;
        for _ in 0..budget {
            order.shuffle(&mut rng);
            let cost = improve_round(&mut order, group_size, &met);
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, order.clone()));
                stale = 0;
            } else {
                stale += 1;
            }
            if cost == 0 || stale >= SHUFFLE_PATIENCE {
                break;
            }
        }
        let (_, chosen) = best.expect("budget >= 1");
        for chunk in chosen.chunks(group_size) {
            for (a, &x) in chunk.iter().enumerate() {
                for &y in &chunk[a + 1..] {
                    met.bump(x, y);
                }
            }
            members.push(chunk.to_vec());
        }
    }

    let repeated_pairs = met.repeats();
    if repeated_pairs > 0 {
        diagnostics.push(format!(
            "note: assignment contains {repeated_pairs} repeated pairings"
        ));
    }
    let matrix = ParticipationMatrix::from_memberships(n, members)?.with_rounds(rounds);
    Ok(Assignment {
        matrix,
        repeated_pairs,
        diagnostics,
    })
}

struct PairCounts {
    n: usize,
    counts: Vec<u32>,
}

impl PairCounts {
    fn new(n: usize) -> Self {
        Self {
            n,
            counts: vec![0; n * n],
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> usize {
        self.counts[a * self.n + b] as usize
    }

    fn bump(&mut self, a: usize, b: usize) {
        self.counts[a * self.n + b] += 1;
        self.counts[b * self.n + a] += 1;
    }

    fn repeats(&self) -> usize {
        let mut total = 0;
        for a in 0..self.n {
            for b in a + 1..self.n {
                total += self.get(a, b).saturating_sub(1);
            }
        }
        total
    }
}

/// Pairwise-swap hill climb over the consecutive-chunk grouping of `order`.
/// Returns the number of already-met pairs in the final grouping.
fn improve_round(order: &mut [usize], group_size: usize, met: &PairCounts) -> usize {
    let n = order.len();
    let groups = n / group_size;
    // clash[s * groups + g]: already-met partners student `s` has in group `g`.
    let mut clash = vec![0usize; n * groups];
    for (p, &x) in order.iter().enumerate() {
        let g = p / group_size;
        for s in 0..n {
            clash[s * groups + g] += met.get(s, x);
        }
    }
    let mut cost: usize = order
        .iter()
        .enumerate()
        .map(|(p, &x)| clash[x * groups + p / group_size])
        .sum::<usize>()
        / 2;
    let mut improved = cost > 0;
    while improved {
        improved = false;
        for pa in 0..n {
            let ga = pa / group_size;
            for pb in (ga + 1) * group_size..n {
                let gb = pb / group_size;
                let (a, b) = (order[pa], order[pb]);
                let ab = met.get(a, b);
                let before = clash[a * groups + ga] + clash[b * groups + gb];
                let after = clash[b * groups + ga] + clash[a * groups + gb] - 2 * ab;
                if after < before {
                    order.swap(pa, pb);
                    for s in 0..n {
                        let (ma, mb) = (met.get(s, a), met.get(s, b));
                        let row = s * groups;
                        clash[row + ga] = clash[row + ga] + mb - ma;
                        clash[row + gb] = clash[row + gb] + ma - mb;
                    }
                    cost = cost + after - before;
                    improved = true;
                }
            }
        }
        if cost == 0 {
            break;
        }
    }
    cost
}

/// Per-project group marks `w_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupMarkVector<T>(Vec<T>);

impl<T: Scalar> GroupMarkVector<T> {
    pub fn new(marks: Vec<T>) -> Result<Self> {
        if marks.iter().any(|w| !w.is_finite()) {
            return Err(Error::param("group_marks", "all marks must be finite"));
        }
        Ok(Self(marks))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fails unless there is exactly one mark per project of `m`.
    pub fn check_against(&self, m: &ParticipationMatrix) -> Result<()> {
        if self.len() != m.n_projects() {
            return Err(Error::Shape(format!(
                "{} group marks for {} projects",
                self.len(),
                m.n_projects()
            )));
        }
        Ok(())
    }
}

impl<T> std::ops::Index<usize> for GroupMarkVector<T> {
    type Output = T;
    fn index(&self, j: usize) -> &T {
        &self.0[j]
    }
}

/// Group mark of each project as the mean ideal mark of its members.
pub fn group_marks<T: Scalar>(
    pop: &StudentPopulation<T>,
    m: &ParticipationMatrix,
) -> Result<GroupMarkVector<T>> {
    if pop.len() != m.n_students() {
        return Err(Error::Shape(format!(
            "population has {} students, participation matrix has {}",
            pop.len(),
            m.n_students()
        )));
    }
    let q = pop.ideal_marks();
    let marks = (0..m.n_projects())
        .map(|j| {
            let group = m.members(j);
            group.iter().map(|&i| q[i]).sum::<T>() / T::from_count(group.len())
        })
        .collect();
    GroupMarkVector::new(marks)
}
