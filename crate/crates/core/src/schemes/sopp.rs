use super::{aggregate, check_marks, MarkResult, Scheme};
use crate::assignment::{GroupMarkVector, ParticipationMatrix};
use crate::error::Result;
use crate::scalar::Scalar;

/// Each student receives the mean mark of their groups.
pub fn sopp<T: Scalar>(w: &GroupMarkVector<T>, m: &ParticipationMatrix) -> Result<MarkResult<T>> {
    check_marks(w, m)?;
    let components = (0..m.n_projects())
        .map(|j| vec![w[j]; m.project_size(j)])
        .collect();
    Ok(aggregate(m, components, Scheme::Sopp, Vec::new()))
}
