use super::{aggregate, check_marks, MarkResult, ReflexiveMarks, Scheme};
use crate::assignment::{GroupMarkVector, ParticipationMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `r_ij = α w_j + (1 − α) y_ij`, averaged over the student's projects.
pub fn reflexive_accounts<T: Scalar>(
    w: &GroupMarkVector<T>,
    m: &ParticipationMatrix,
    y: &ReflexiveMarks<T>,
    alpha: T,
) -> Result<MarkResult<T>> {
    check_marks(w, m)?;
    y.check_against(m)?;
    if !(alpha >= T::zero() && alpha <= T::one()) {
        return Err(Error::param("ra_alpha", "must lie in [0, 1]"));
    }
    let beta = T::one() - alpha;
    let components = (0..m.n_projects())
        .map(|j| y.for_project(j).iter().map(|&yij| alpha * w[j] + beta * yij).collect())
        .collect();
    let mut result = aggregate(m, components, Scheme::Ra, Vec::new());
    result.params.ra_alpha = alpha;
    Ok(result)
}

/// Splits the mark pool `t_j = w_j n_j` in proportion to reflexive marks.
///
/// A group whose reflexive marks are all zero splits the pool equally.
pub fn mark_adjusted_reflexive<T: Scalar>(
    w: &GroupMarkVector<T>,
    m: &ParticipationMatrix,
    y: &ReflexiveMarks<T>,
) -> Result<MarkResult<T>> {
    check_marks(w, m)?;
    y.check_against(m)?;
    let mut diagnostics = Vec::new();
    let components = (0..m.n_projects())
        .map(|j| {
            let marks = y.for_project(j);
            let pool = w[j] * T::from_count(marks.len());
            let total: T = marks.iter().copied().sum();
            if total == T::zero() {
                diagnostics.push(format!(
                    "project {j}: all reflexive marks are zero; mark pool split equally"
                ));
                vec![w[j]; marks.len()]
            } else {
                marks.iter().map(|&yi| pool * yi / total).collect()
            }
        })
        .collect();
    Ok(aggregate(m, components, Scheme::Mra, diagnostics))
}
