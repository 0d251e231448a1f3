use cycle_minion::construction::*;
use cycle_minion::degree::*;
use cycle_minion::graph::make_complete;
use cycle_minion::homsearch::{enumerate_polymorphisms, DEFAULT_BUDGET};
use cycle_minion::minion::{is_in_z_leq_n, remark_function, LinearForm};
use cycle_minion::verify;

#[test]
fn local_equals_global_on_c3() {
    let k3 = make_complete(3).unwrap();
    for f in enumerate_polymorphisms(3, 2, &k3, DEFAULT_BUDGET).unwrap() {
        for i in 0..2 {
            let g = coordinate_degree_global(&f, i).unwrap();
            assert!(local_degrees_all_edges(&f, i)
                .unwrap()
                .iter()
                .all(|&d| d == g));
        }
    }
}

#[test]
fn remark_functions_have_degree_one_on_first_coordinate() {
    for k in [5, 7, 9] {
        for n in 1..=3 {
            let f = remark_function(k, n).unwrap();
            let mut expected = vec![0; n];
            expected[0] = 1;
            assert_eq!(delta(&f).unwrap().coeffs, expected, "k={k} n={n}");
        }
    }
}

#[test]
fn methods_agree_on_eta_images() {
    let f = LinearForm::new(vec![1, -1, 1]);
    let t = eta(&f, 9).unwrap();
    let global = degree_vector(&t, DegreeMethod::Global).unwrap();
    let local = degree_vector(&t, DegreeMethod::Local).unwrap();
    assert_eq!(global, vec![1, -1, 1]);
    assert_eq!(local, global);
}

#[test]
fn largest_odd() {
    let cases = [(3, 1), (5, 1), (7, 1), (9, 3), (11, 3), (15, 5), (21, 7)];
    for (k, n) in cases {
        assert_eq!(largest_odd_n(k).unwrap(), n);
    }
    assert!(largest_odd_n(8).is_err());
}

#[test]
fn eta_larger_cycle_round_trip() {
    for f in [vec![3], vec![1, 1, 1], vec![-1, 2], vec![0, 1, 0]] {
        let form = LinearForm::new(f);
        assert!(is_in_z_leq_n(&form, 3).unwrap());
        assert!(roundtrip_check(&form, 11).unwrap());
    }
}

#[test]
fn suites_pass_on_small_parameters() {
    let cases = [
        (
            "unary-degree",
            verify::SuiteParams {
                m: Some(7),
                l: Some(5),
                ..Default::default()
            },
        ),
        (
            "local-global",
            verify::SuiteParams {
                k: Some(3),
                n: Some(3),
                ..Default::default()
            },
        ),
        (
            "minor-preservation",
            verify::SuiteParams {
                k: Some(3),
                samples: Some(10),
                ..Default::default()
            },
        ),
        (
            "bounding",
            verify::SuiteParams {
                k: Some(7),
                n: Some(2),
                samples: Some(20),
                ..Default::default()
            },
        ),
        (
            "chains",
            verify::SuiteParams {
                samples: Some(20),
                seed: 7,
                ..Default::default()
            },
        ),
        ("essential-arity", verify::SuiteParams::default()),
    ];
    for (name, params) in cases {
        let report = verify::run_suite(name, &params).unwrap();
        assert!(report.all_passed(), "{}", report.to_json());
        assert_eq!(
            report.canonical_json(),
            verify::run_suite(name, &params).unwrap().canonical_json()
        );
    }
}

#[test]
fn eta_rejects_forms_outside_the_bound() {
    assert!(eta(&LinearForm::new(vec![1, 1]), 9).is_err());
    assert!(eta(&LinearForm::new(vec![5]), 9).is_err());
}
