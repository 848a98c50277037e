use std::fs;

use groupmark::{export_replicate, ingest_and_mark, simulate_replicate, CohortData, ExperimentConfig};
use groupmark_core::{Params, Scheme};

#[test]
fn exported_replicate_round_trips() {
    let cfg = ExperimentConfig {
        students: 20,
        seed: 99,
        ..ExperimentConfig::default()
    };
    let inputs = simulate_replicate(&cfg, 4).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let exported = export_replicate(&inputs, tmp.path()).unwrap();
    let loaded = CohortData::load(tmp.path()).unwrap();
    assert_eq!(loaded.student_ids, exported.student_ids);
    assert_eq!(loaded.project_ids, exported.project_ids);
    assert_eq!(loaded.group_marks, exported.group_marks);
    assert_eq!(loaded.assessments, exported.assessments);
    // Round structure is not part of the file format.
    assert_eq!(loaded.matrix.rounds(), None);
    for j in 0..exported.matrix.n_projects() {
        assert_eq!(loaded.matrix.members(j), exported.matrix.members(j));
    }

    for scheme in Scheme::ALL {
        let direct = exported.mark(scheme, &cfg.params).unwrap();
        let (_, reread) = ingest_and_mark(tmp.path(), scheme, &cfg.params).unwrap();
        assert_eq!(direct, reread, "{scheme}");
    }
}

#[test]
fn ideal_marks_are_exported_alongside() {
    let cfg = ExperimentConfig {
        students: 8,
        ..ExperimentConfig::default()
    };
    let inputs = simulate_replicate(&cfg, 0).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    export_replicate(&inputs, tmp.path()).unwrap();
    let text = fs::read_to_string(tmp.path().join("ideal_marks.csv")).unwrap();
    let parsed: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(parsed, inputs.population.ideal_marks());
}

/// Three students agree to give the fourth nothing.
#[test]
fn conspiracy_is_indistinguishable_from_a_defector() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(
        dir.join("memberships.csv"),
        "project_id,student_id\nG,ana\nG,ben\nG,cai\nG,dev\n",
    )
    .unwrap();
    fs::write(dir.join("group_marks.csv"), "project_id,mark\nG,64\n").unwrap();
    let mut peer = String::from("project_id,rater_id,target_id,mark\n");
    let names = ["ana", "ben", "cai", "dev"];
    for rater in names {
        for target in names {
            if rater == target {
                continue;
            }
            let mark = if target == "dev" { 0 } else { 70 };
            peer.push_str(&format!("G,{rater},{target},{mark}\n"));
        }
    }
    fs::write(dir.join("peer.csv"), peer).unwrap();

    let (cohort, marks) = ingest_and_mark(dir, Scheme::Npa, &Params::default()).unwrap();
    assert_eq!(cohort.student_ids, names);
    assert_eq!(marks.assigned[3], 0.0);
    // Dev's own marks for the others are uniform, so the pool is split
    // evenly among the three conspirators.
    for x in &marks.assigned[..3] {
        assert!((x - 64.0 * 4.0 / 3.0).abs() < 1e-9, "{x}");
    }
}

#[test]
fn rankings_load_by_position() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(dir.join("memberships.csv"), "project_id,student_id\nG,a\nG,b\nG,c\n").unwrap();
    fs::write(dir.join("group_marks.csv"), "project_id,mark\nG,60\n").unwrap();
    // Positions need not start at 1 or be contiguous; only their order counts.
    fs::write(
        dir.join("rankings.csv"),
        "project_id,rater_id,target_id,rank_position\n\
         G,a,c,7\nG,a,b,3\nG,b,a,1\nG,b,c,2\nG,c,a,10\nG,c,b,20\n",
    )
    .unwrap();
    let (_, marks) = ingest_and_mark(dir, Scheme::Pr, &Params::default()).unwrap();
    let x = &marks.assigned;
    assert!(x[0] > x[1] && x[0] > x[2], "{x:?}");
    assert!((x.iter().sum::<f64>() - 180.0).abs() < 1e-9);
}
