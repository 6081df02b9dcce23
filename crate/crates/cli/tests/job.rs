use dybe::rootdata::Flavor;
use dybe_cli::job::{
    Equation, Gauge, MacdonaldTask, Method, ModulePair, Perturbation, Solution, Task, TraceSide,
};
use dybe_cli::{parse_job, run, JobSpec};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn round_trip(job: &JobSpec) -> JobSpec {
    let text = serde_json::to_string(job).unwrap();
    parse_job(&text).unwrap()
}

fn catalog(name: &str) -> Solution {
    Solution {
        catalog: Some(name.into()),
        ..Solution::default()
    }
}

fn examples() -> Vec<JobSpec> {
    let pair = ModulePair {
        algebra: "gl2".into(),
        quantum: true,
        left: "S2".into(),
        right: "V".into(),
    };
    let tasks = vec![
        Task::Verify {
            equation: Equation::Braid,
            solution: catalog("R-X"),
            q: Some("1".into()),
            p: 4,
        },
        Task::Catalog {
            solution: Solution {
                n: Some(3),
                flavor: Some(Flavor::Sl),
                x: vec![1],
                ..catalog("r-eps-X")
            },
        },
        Task::Fusion {
            pair: pair.clone(),
            method: Method::Both,
        },
        Task::Exchange {
            pair,
            method: Method::Abrr,
        },
        Task::Limit {
            solution: Solution {
                quantum: true,
                ..catalog("gl-closed-form")
            },
            order: 2,
        },
        Task::Shapovalov {
            depth: 3,
            quantum: true,
        },
        Task::Macdonald {
            job: MacdonaldTask::Operator {
                n: 3,
                r: 2,
                t: "mt".into(),
            },
        },
        Task::Macdonald {
            job: MacdonaldTask::Polynomial {
                mu: vec![2, 1, 0],
                t: "s^2".into(),
            },
        },
        Task::Macdonald {
            job: MacdonaldTask::Eigen {
                mu: vec![1, 0],
                t: "mt".into(),
            },
        },
        Task::Macdonald {
            job: MacdonaldTask::Commutativity {
                n: 3,
                degree: 3,
                t: "mt".into(),
            },
        },
        Task::Macdonald {
            job: MacdonaldTask::Transfer {
                quantum: false,
                u: "S2".into(),
                v: "V".into(),
                w: Some("V".into()),
            },
        },
        Task::Macdonald {
            job: MacdonaldTask::Corollary91 { n: 2, r: 1, m: 1 },
        },
        Task::Macdonald {
            job: MacdonaldTask::TraceResidual {
                side: TraceSide::Symmetry,
                depth: 2,
                w: "V".into(),
            },
        },
        Task::Acceptance {
            criteria: vec![3, 11],
        },
        Task::Acceptance { criteria: vec![] },
    ];
    tasks.into_iter().map(JobSpec::new).collect()
}

#[test]
fn every_task_round_trips() {
    for job in examples() {
        assert_eq!(round_trip(&job), job);
    }
    let mut with_output = JobSpec::new(Task::Shapovalov {
        depth: 1,
        quantum: false,
    });
    with_output.output = Some("out.json".into());
    assert_eq!(round_trip(&with_output), with_output);
}

#[test]
fn p_defaults_to_three() {
    let text = r#"{"schema": "dybe.job/1", "task": {"subcommand": "verify", "equation": "qdybe",
        "solution": {"catalog": "R-X", "n": 2, "x": [1, 2]}}}"#;
    let job = parse_job(text).unwrap();
    assert!(matches!(job.task, Task::Verify { p: 3, .. }));
    assert!(run(&job).unwrap().pass);
}

#[test]
fn jobs_run_deterministically() {
    let job = JobSpec::new(Task::Verify {
        equation: Equation::All,
        solution: catalog("appA"),
        q: None,
        p: 3,
    });
    let a = run(&job).unwrap();
    assert!(a.pass);
    assert_eq!(run(&round_trip(&job)).unwrap(), a);
}

fn small_string() -> impl Strategy<Value = String> {
    "[a-z0-9/^*+-]{1,8}"
}

fn gauge() -> impl Strategy<Value = Gauge> {
    prop_oneof![
        prop::collection::vec(small_string(), 0..4).prop_map(|nu| Gauge::Shift { nu }),
        prop::collection::vec(small_string(), 0..4).prop_map(|nu| Gauge::ExpShift { nu }),
        prop::collection::vec(1usize..5, 0..4).prop_map(|sigma| Gauge::Weyl { sigma }),
        prop::collection::vec((1usize..5, 1usize..5, small_string()), 0..3)
            .prop_map(|entries| Gauge::TwoForm { entries }),
    ]
}

prop_compose! {
    fn solution()(
        catalog in prop::option::of(prop::sample::select(dybe_cli::solution::CATALOG_NAMES.to_vec())),
        n in prop::option::of(2usize..5),
        flavor in prop::option::of(prop_oneof![Just(Flavor::Gl), Just(Flavor::Sl)]),
        quantum in any::<bool>(),
        x in prop::collection::vec(1usize..5, 0..4),
        roots in prop::collection::vec((1usize..4, 2usize..5), 0..3),
        eps in prop::option::of(small_string()),
        l_basis in prop::collection::vec(prop::collection::vec(-2i64..3, 3), 0..3),
        printed in any::<bool>(),
        gauge in prop::option::of(gauge()),
        perturb in prop::collection::vec((small_string(), small_string()), 0..3),
    ) -> Solution {
        Solution {
            catalog: catalog.map(String::from),
            n,
            flavor,
            quantum,
            x,
            roots,
            eps,
            gamma1: l_basis.iter().map(|r| r.len()).collect(),
            gamma2: vec![],
            l_basis,
            printed,
            gauge,
            perturb: perturb.into_iter().map(|(at, by)| Perturbation { at, by }).collect(),
            ..Solution::default()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { rng_seed: RngSeed::Fixed(0x5eed), ..ProptestConfig::default() })]

    #[test]
    fn verify_jobs_round_trip(s in solution(), q in prop::option::of(small_string()), p in 2usize..6) {
        let job = JobSpec::new(Task::Verify { equation: Equation::All, solution: s.clone(), q, p });
        prop_assert_eq!(round_trip(&job), job);
        let job = JobSpec::new(Task::Limit { solution: s, order: p });
        prop_assert_eq!(round_trip(&job), job);
    }
}
