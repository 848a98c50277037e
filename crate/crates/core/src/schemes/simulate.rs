use std::cmp::Ordering;

use super::{AssessmentBundle, AssessmentKinds, PeerMarks, PeerRankings, ReflexiveMarks};
use crate::assignment::ParticipationMatrix;
use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;
use crate::population::{NoiseModel, SeedStreams, StreamKind, StudentPopulation};
use crate::scalar::Scalar;

/// Simulated auxiliary assessments.
///
/// Every draw is an independent perturbation of the assessed student's
/// ideal mark: reflexive marks per membership, peer marks per (project,
/// rater, target), and for rankings one perceived mark per (project, rater,
/// target), sorted best first. Exact ties in perceived marks are broken by
/// cyclic position after the rater within the group, so a fully tied group
/// produces rotation-symmetric rankings.
pub fn simulate_assessments<T: Scalar>(
    pop: &StudentPopulation<T>,
    m: &ParticipationMatrix,
    noise: &NoiseModel<T>,
    which: AssessmentKinds,
    streams: &SeedStreams,
) -> Result<AssessmentBundle<T>> {
    if pop.len() != m.n_students() {
        return Err(Error::Shape(format!(
            "population has {} students, participation matrix has {}",
            pop.len(),
            m.n_students()
        )));
    }
    let q = pop.ideal_marks();
    let mut bundle = AssessmentBundle::empty();

    if which.reflexive {
        let mut rng = streams.rng(StreamKind::Reflexive);
        let per_project = (0..m.n_projects())
            .map(|j| m.members(j).iter().map(|&i| noise.perturb(q[i], &mut rng)).collect())
            .collect();
        bundle.reflexive = Some(ReflexiveMarks::new(m, per_project)?);
    }

    if which.peer {
        let mut rng = streams.rng(StreamKind::Peer);
        let mut per_project = Vec::with_capacity(m.n_projects());
        for j in 0..m.n_projects() {
            let members = m.members(j);
            let n = members.len();
            let mut s = DenseMatrix::zeros(n, n);
            for k in 0..n {
                for (i, &student) in members.iter().enumerate() {
                    if i != k {
                        s[(k, i)] = noise.perturb(q[student], &mut rng);
                    }
                }
            }
            per_project.push(s);
        }
        bundle.peer = Some(PeerMarks::new(m, per_project)?);
    }

    if which.rankings {
        let mut rng = streams.rng(StreamKind::Ranking);
        let mut per_project = Vec::with_capacity(m.n_projects());
        for j in 0..m.n_projects() {
            let members = m.members(j);
            let n = members.len();
            let mut lists = Vec::with_capacity(n);
            for k in 0..n {
                let mut perceived: Vec<(usize, T)> = (1..n)
                    .map(|offset| {
                        let i = (k + offset) % n;
                        (i, noise.perturb(q[members[i]], &mut rng))
                    })
                    .collect();
                // stable sort keeps cyclic order among exact ties
                perceived.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal));
                lists.push(perceived.into_iter().map(|(i, _)| i).collect());
            }
            per_project.push(lists);
        }
        bundle.rankings = Some(PeerRankings::new(m, per_project)?);
    }

    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::assignment::assign_groups;
    use crate::population::generate_population;

    #[test]
    fn noiseless_assessments_are_exact() {
        let m = one_group(4);
        let p = pop(&[70.0, 50.0, 90.0, 60.0]);
        let b = simulate_assessments(&p, &m, &NoiseModel::noiseless(), AssessmentKinds::ALL, &SeedStreams::new(1)).unwrap();
        assert_eq!(b.reflexive.unwrap().for_project(0), &[70.0, 50.0, 90.0, 60.0]);
        let s = b.peer.unwrap();
        assert_eq!(s.for_project(0)[(1, 2)], 90.0);
        let r = b.rankings.unwrap();
        assert_eq!(r.for_project(0)[0], vec![2, 3, 1]);
        assert_eq!(r.for_project(0)[2], vec![0, 3, 1]);
    }

    #[test]
    fn tied_group_ranks_cyclically() {
        let m = one_group(4);
        let p = pop(&[60.0; 4]);
        let b = simulate_assessments(&p, &m, &NoiseModel::noiseless(), AssessmentKinds::ALL, &SeedStreams::new(1)).unwrap();
        let r = b.rankings.unwrap();
        assert_eq!(r.for_project(0)[0], vec![1, 2, 3]);
        assert_eq!(r.for_project(0)[2], vec![3, 0, 1]);
    }

    #[test]
    fn noisy_reflexive_marks_stay_in_band() {
        let a = assign_groups(52, 4, 4, 8).unwrap();
        let p = generate_population(52, 60.0, 12.0, 8).unwrap();
        let noise = NoiseModel::default();
        let b = simulate_assessments(&p, &a.matrix, &noise, AssessmentKinds::ALL, &SeedStreams::new(8)).unwrap();
        let y = b.reflexive.unwrap();
        let q: &[f64] = p.ideal_marks();
        for j in 0..a.matrix.n_projects() {
            for (k, &i) in a.matrix.members(j).iter().enumerate() {
                let v = y.for_project(j)[k];
                assert!(v >= (q[i] - 16.0).max(0.0) && v <= q[i] + 16.0);
            }
        }
    }

    #[test]
    fn only_requested_kinds_are_drawn() {
        let m = one_group(3);
        let p = pop(&[1.0, 2.0, 3.0]);
        let which = AssessmentKinds { peer: true, ..AssessmentKinds::NONE };
        let b = simulate_assessments(&p, &m, &NoiseModel::default(), which, &SeedStreams::new(1)).unwrap();
        assert_eq!(b.available(), which);
    }

    #[test]
    fn peer_draws_do_not_depend_on_other_kinds() {
        let a = assign_groups(20, 4, 2, 2).unwrap();
        let p = generate_population(20, 60.0, 12.0, 2).unwrap();
        let streams = SeedStreams::new(2);
        let noise = NoiseModel::default();
        let only_peer = AssessmentKinds { peer: true, ..AssessmentKinds::NONE };
        let a1 = simulate_assessments(&p, &a.matrix, &noise, only_peer, &streams).unwrap();
        let a2 = simulate_assessments(&p, &a.matrix, &noise, AssessmentKinds::ALL, &streams).unwrap();
        assert_eq!(a1.peer, a2.peer);
    }
}
