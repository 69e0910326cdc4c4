mod common;

use cluster_teleport::cluster::ClusterKind;
use cluster_teleport::qsim::StateVector;
use cluster_teleport::teleport::{run_protocol_exact, BellOutcome, BranchRecord, InputState, ProtocolConfig};
use common::*;
use num_complex::Complex64 as C64;

fn library_run(kind: ClusterKind, n: usize, input: [C64; 2]) -> Vec<BranchRecord> {
    let psi = StateVector::from_amplitudes(input.to_vec()).unwrap();
    let cfg = ProtocolConfig::new(kind, n, InputState::Custom(psi)).unwrap();
    run_protocol_exact(&cfg).unwrap()
}

fn check(kind: ClusterKind, n: usize, input: [C64; 2]) {
    let is_box = kind == ClusterKind::Box;
    let oracle = oracle_branches(is_box, n, input);
    let records = library_run(kind, n, input);
    assert_eq!(records.len(), oracle.len(), "{kind} {n}: branch count");

    let uniform = 1.0 / oracle.len() as f64;
    for (r, o) in records.iter().zip(&oracle) {
        assert_eq!(r.j, BellOutcome::from_bits(o.j.0, o.j.1), "{kind} {n}: ordering");
        assert_eq!(r.m, o.m);
        assert!((r.probability - o.probability).abs() < 1e-9);
        assert!((r.probability - uniform).abs() < 1e-9);

        // the reported correction applied to the oracle's Bob state
        let p = word_matrix(&r.correction.to_string());
        let fixed = apply(&p, o.bob);
        let f = overlap_sq(input, fixed);
        assert!((f - 1.0).abs() < 1e-9, "{kind} {n} j={} m={:?}: oracle fidelity {f}", r.j, r.m);
        // and the library's own corrected state
        assert!((r.fidelity - 1.0).abs() < 1e-9, "{kind} {n}: library fidelity {}", r.fidelity);
        // the unsimplified word agrees with its canonical form
        let w = word_matrix(&r.word.to_string());
        assert!(equal_up_to_quarter_phase(&w, &p, 1e-12));
    }
}

#[test]
fn canonical_inputs_teleport_on_every_branch() {
    for input in canonical_inputs() {
        for n in BOX_SIZES {
            check(ClusterKind::Box, n, input);
        }
        for n in CHAIN_SIZES {
            check(ClusterKind::Chain, n, input);
        }
    }
}

#[test]
fn haar_random_inputs_teleport_on_every_branch() {
    for input in haar_inputs(20, 77) {
        for n in BOX_SIZES {
            check(ClusterKind::Box, n, input);
        }
        for n in CHAIN_SIZES {
            check(ClusterKind::Chain, n, input);
        }
    }
}

#[test]
fn branch_counts() {
    let input = canonical_inputs()[0];
    for n in BOX_SIZES {
        let participants = library_run(ClusterKind::Box, n, input).len() / 4;
        assert_eq!(participants, 1 << (n - 3), "box {n}");
    }
    for n in CHAIN_SIZES {
        let participants = library_run(ClusterKind::Chain, n, input).len() / 4;
        assert_eq!(participants, 1 << (n - 2), "chain {n}");
    }
}

#[test]
fn announced_outcome_examples() {
    let input = canonical_inputs()[3];
    let records = library_run(ClusterKind::Box, 6, input);
    let r = records
        .iter()
        .find(|r| r.j.to_string() == "01" && r.m == [-1, 1, -1, -1])
        .expect("branch occurs");
    assert_eq!(r.word.to_string(), "IIZIXH");
    assert_eq!(r.correction.to_string(), "ZXH");

    let records = library_run(ClusterKind::Chain, 8, input);
    let r = records
        .iter()
        .find(|r| r.j.to_string() == "10" && r.m == [1, -1, 1, 1, -1, 1])
        .expect("branch occurs");
    assert_eq!(r.word.to_string(), "IZIIXIZH");
    assert_eq!(r.correction.to_string(), "XH");
}
