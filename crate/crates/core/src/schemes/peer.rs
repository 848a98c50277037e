use super::{aggregate, check_marks, MarkResult, PeerMarks, Scheme};
use crate::assignment::{GroupMarkVector, ParticipationMatrix};
use crate::error::Result;
use crate::scalar::Scalar;

/// Normalised peer assessment.
///
/// Each rater's marks are normalised to sum to one over their groupmates;
/// member `i` then receives `t_j · (Σ_k s_ki) / n_j`. A rater who gives
/// everyone zero is treated as rating all groupmates equally.
pub fn normalised_peer_assessment<T: Scalar>(
    w: &GroupMarkVector<T>,
    m: &ParticipationMatrix,
    s: &PeerMarks<T>,
) -> Result<MarkResult<T>> {
    check_marks(w, m)?;
    s.check_against(m)?;
    let mut diagnostics = Vec::new();
    let components = (0..m.n_projects())
        .map(|j| {
            let n = m.project_size(j);
            if n == 1 {
                return vec![w[j]];
            }
            let marks = s.for_project(j);
            let mut received = vec![T::zero(); n];
            for k in 0..n {
                let total: T = (0..n).filter(|&i| i != k).map(|i| marks[(k, i)]).sum();
                if total == T::zero() {
                    diagnostics.push(format!(
                        "project {j}: student {} gave all groupmates zero; treated as equal shares",
                        m.members(j)[k]
                    ));
                    let even = T::one() / T::from_count(n - 1);
                    for (i, r) in received.iter_mut().enumerate() {
                        if i != k {
                            *r = *r + even;
                        }
                    }
                } else {
                    for (i, r) in received.iter_mut().enumerate() {
                        if i != k {
                            *r = *r + marks[(k, i)] / total;
                        }
                    }
                }
            }
            let nj = T::from_count(n);
            let pool = w[j] * nj;
            received.into_iter().map(|share| pool * share / nj).collect()
        })
        .collect();
    Ok(aggregate(m, components, Scheme::Npa, diagnostics))
}
