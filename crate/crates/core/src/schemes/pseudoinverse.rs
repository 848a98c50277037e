use super::{check_marks, MarkResult, Scheme, SchemeParams};
use crate::assignment::{GroupMarkVector, ParticipationMatrix};
use crate::error::Result;
use crate::numerics::{default_rank_tol, pinv_solve, DenseMatrix};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Pseudoinverse marking: the minimum-norm least-squares solution of
/// `Q x = w` with `Q_ji = M_ji / n_j`.
pub fn pseudoinverse_marking<T: Scalar>(
    w: &GroupMarkVector<T>,
    m: &ParticipationMatrix,
) -> Result<MarkResult<T>> {
    pseudoinverse_marking_with_tol(w, m, None)
}

pub fn pseudoinverse_marking_with_tol<T: Scalar>(
    w: &GroupMarkVector<T>,
    m: &ParticipationMatrix,
    rank_tol: Option<T>,
) -> Result<MarkResult<T>> {
    check_marks(w, m)?;
    let (rows, cols) = (m.n_projects(), m.n_students());
    let mut q = DenseMatrix::zeros(rows, cols);
    for j in 0..rows {
        let share = T::one() / T::from_count(m.project_size(j));
        for &i in m.members(j) {
            q[(j, i)] = share;
        }
    }
    let tol = rank_tol.unwrap_or_else(|| default_rank_tol(rows, cols));
    let assigned = pinv_solve(&q, w.as_slice(), tol)?;

    let mut diagnostics = Vec::new();
    let fewest = (0..cols).map(|i| m.projects_per_student(i)).min().unwrap_or(0);
    let largest = (0..rows).map(|j| m.project_size(j)).max().unwrap_or(0);
    if fewest < largest {
        diagnostics.push(format!(
            "warning: some students took part in {fewest} projects but groups have up to \
             {largest} members; marks cannot be fully separated"
        ));
    }
    Ok(MarkResult {
        assigned,
        per_project: BTreeMap::new(),
        scheme: Scheme::Pim,
        params: SchemeParams {
            pinv_rank_tol: Some(tol),
            ..SchemeParams::default()
        },
        diagnostics,
    })
}
