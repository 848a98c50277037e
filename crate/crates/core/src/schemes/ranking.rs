use super::{aggregate, check_marks, MarkResult, PeerRankings, Scheme, SchemeParams};
use crate::assignment::{GroupMarkVector, ParticipationMatrix};
use crate::error::Result;
use crate::numerics::{leading_eigenvector, DenseMatrix};
use crate::scalar::Scalar;

/// Pairwise-comparison matrix of one group.
///
/// `rankings[k]` lists rater `k`'s groupmates best first. Entry `(i, k)`
/// accumulates `a` each time `i` is ranked below `k` and `b` each time `i`
/// is ranked above `k`; the diagonal stays zero.
pub fn ranking_adjacency<T: Scalar>(rankings: &[Vec<usize>], a: T, b: T) -> DenseMatrix<T> {
    let n = rankings.len();
    let mut adj = DenseMatrix::zeros(n, n);
    for list in rankings {
        for (p, &better) in list.iter().enumerate() {
            for &worse in &list[p + 1..] {
                adj[(worse, better)] = adj[(worse, better)] + a;
                adj[(better, worse)] = adj[(better, worse)] + b;
            }
        }
    }
    adj
}

/// Peer ranking: `r_ij = w_j (α + (1 − α) v_i)` where `v` is the Perron
/// vector of the group's comparison matrix scaled to sum to `n_j`.
pub fn peer_ranking<T: Scalar>(
    w: &GroupMarkVector<T>,
    m: &ParticipationMatrix,
    rankings: &PeerRankings,
    params: &SchemeParams<T>,
) -> Result<MarkResult<T>> {
    check_marks(w, m)?;
    rankings.check_against(m)?;
    params.validate()?;
    let alpha = params.pr_alpha;
    let beta = T::one() - alpha;
    let components = (0..m.n_projects())
        .map(|j| {
            let adj = ranking_adjacency(rankings.for_project(j), params.pr_a, params.pr_b);
            let n = T::from_count(m.project_size(j));
            let v = leading_eigenvector(&adj, n, params.eigen_tol, params.eigen_max_iter)?.vector;
            Ok(v.into_iter().map(|vi| w[j] * (alpha + beta * vi)).collect())
        })
        .collect::<Result<Vec<Vec<T>>>>()?;
    let mut result = aggregate(m, components, Scheme::Pr, Vec::new());
    result.params = *params;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::schemes::sopp;
    use approx::assert_abs_diff_eq;

    /// A: B > C > D, B: C > A > D, C: B > A > D, D: B > A > C.
    pub(crate) fn figure_rankings() -> Vec<Vec<usize>> {
        vec![vec![1, 2, 3], vec![2, 0, 3], vec![1, 0, 3], vec![1, 0, 2]]
    }

    #[test]
    fn figure_adjacency_pattern() {
        let (a, b) = (0.25, 1.0);
        let adj = ranking_adjacency(&figure_rankings(), a, b);
        let expected = [
            [0.0, 2.0 * a, a + b, 2.0 * b],
            [2.0 * b, 0.0, 2.0 * b, 2.0 * b],
            [a + b, 2.0 * a, 0.0, 2.0 * b],
            [2.0 * a, 2.0 * a, 2.0 * a, 0.0],
        ];
        assert_eq!(adj, DenseMatrix::from_rows(&expected).unwrap());
    }

    #[test]
    fn figure_marks_rank_b_first() {
        let m = one_group(4);
        let w = GroupMarkVector::new(vec![60.0]).unwrap();
        let r = PeerRankings::new(&m, vec![figure_rankings()]).unwrap();
        let res = peer_ranking(&w, &m, &r, &SchemeParams::default()).unwrap();
        let x = &res.assigned;
        assert!(x[1] > x[0] && x[0] > x[3]);
        assert_abs_diff_eq!(x[0], x[2], epsilon = 1e-9);
        // Mean of (α + (1-α) v) is 1 because Σ v = n.
        assert_abs_diff_eq!(x.iter().sum::<f64>() / 4.0, 60.0, epsilon = 1e-9);
    }

    #[test]
    fn balanced_rankings_give_group_mark() {
        // Cyclic rankings of three students: every pair is split once each way.
        let m = one_group(3);
        let w = GroupMarkVector::new(vec![64.0]).unwrap();
        let r = PeerRankings::new(&m, vec![vec![vec![1, 2], vec![2, 0], vec![0, 1]]]).unwrap();
        let res = peer_ranking(&w, &m, &r, &SchemeParams::default()).unwrap();
        assert_abs_diff_eq!(res.assigned.as_slice(), [64.0; 3].as_slice(), epsilon = 1e-9);
    }

    #[test]
    fn unit_alpha_is_sopp() {
        let m = four_cycle();
        let w = GroupMarkVector::new(vec![45.0, 65.0, 50.0, 60.0]).unwrap();
        let r = PeerRankings::new(&m, vec![vec![vec![1], vec![0]]; 4]).unwrap();
        let params = SchemeParams {
            pr_alpha: 1.0,
            ..SchemeParams::default()
        };
        let res = peer_ranking(&w, &m, &r, &params).unwrap();
        assert_eq!(res.assigned, sopp(&w, &m).unwrap().assigned);
    }

    #[test]
    fn pairs_carry_no_ranking_information() {
        let m = one_group(2);
        let w = GroupMarkVector::new(vec![50.0]).unwrap();
        let r = PeerRankings::new(&m, vec![vec![vec![1], vec![0]]]).unwrap();
        let res = peer_ranking(&w, &m, &r, &SchemeParams::default()).unwrap();
        assert_eq!(res.assigned, vec![50.0, 50.0]);
    }

    #[test]
    fn non_convergence_surfaces() {
        let m = one_group(4);
        let w = GroupMarkVector::new(vec![60.0]).unwrap();
        let r = PeerRankings::new(&m, vec![figure_rankings()]).unwrap();
        let params = SchemeParams {
            eigen_max_iter: 1,
            ..SchemeParams::default()
        };
        assert!(matches!(
            peer_ranking(&w, &m, &r, &params),
            Err(crate::Error::NonConvergence { iterations: 1, .. })
        ));
    }
}
