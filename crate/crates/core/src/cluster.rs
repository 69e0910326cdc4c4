//! Box (ladder) and chain (path) cluster states.
//!
//! Qubits are labelled with the protocol's logical labels `1..=N`. Inside a
//! [`StateVector`] produced by [`prepare_cluster`], label `a` lives at register
//! position `a - 1`.
//!
//! The box topology is the ladder graph: rungs `(2k-1, 2k)`, an odd rail
//! `(1,3), (3,5), ...` and an even rail `(2,4), (4,6), ...`. For six qubits its
//! stabilizer generators are `XZZIII, ZXIZII, ZIXZZI, IZZXIZ, IIZIXZ, IIIZZX`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qsim::{apply_cz, Pauli, PauliString, StateVector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusterKind {
    Box,
    Chain,
}

impl ClusterKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClusterKind::Box => "box",
            ClusterKind::Chain => "chain",
        }
    }
}

impl fmt::Display for ClusterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClusterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "box" => Ok(ClusterKind::Box),
            "chain" => Ok(ClusterKind::Chain),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// Unordered edge between two logical qubit labels, stored with `a < b`.
pub type Edge = (usize, usize);

/// Interaction graph of a cluster state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TopologyRepr")]
pub struct ClusterTopology {
    kind: ClusterKind,
    n_qubits: usize,
    edges: BTreeSet<Edge>,
}

#[derive(Deserialize)]
struct TopologyRepr {
    kind: ClusterKind,
    n_qubits: usize,
    edges: BTreeSet<Edge>,
}

impl TryFrom<TopologyRepr> for ClusterTopology {
    type Error = Error;

    fn try_from(r: TopologyRepr) -> Result<Self> {
        let t = build_topology(r.kind, r.n_qubits)?;
        if t.edges != r.edges {
            return Err(Error::Parse(format!(
                "edge set does not match the {} topology on {} qubits",
                r.kind, r.n_qubits
            )));
        }
        Ok(t)
    }
}

impl ClusterTopology {
    pub fn kind(&self) -> ClusterKind {
        self.kind
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Neighbours of logical qubit `a`, ascending.
    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(x, y)| {
                if x == a {
                    Some(y)
                } else if y == a {
                    Some(x)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n_qubits + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(a) = stack.pop() {
            for b in self.neighbors(a) {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen[1..].iter().all(|&s| s)
    }

    /// Two-colouring of the (bipartite) graph; `true` marks the class of qubit 1.
    /// Index 0 is unused.
    pub fn two_coloring(&self) -> Vec<bool> {
        let mut color: Vec<Option<bool>> = vec![None; self.n_qubits + 1];
        color[1] = Some(true);
        let mut stack = vec![1];
        while let Some(a) = stack.pop() {
            let c = color[a].unwrap_or(true);
            for b in self.neighbors(a) {
                if color[b].is_none() {
                    color[b] = Some(!c);
                    stack.push(b);
                }
            }
        }
        color.into_iter().map(|c| c.unwrap_or(false)).collect()
    }
}

/// Builds the box (ladder) or chain (path) topology on `n` qubits.
pub fn build_topology(kind: ClusterKind, n: usize) -> Result<ClusterTopology> {
    let min = match kind {
        ClusterKind::Box => 4,
        ClusterKind::Chain => 2,
    };
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidQubitCount {
            kind: kind.as_str(),
            n,
            reason: "qubit count must be even",
        });
    }
    if n < min {
        return Err(Error::InvalidQubitCount {
            kind: kind.as_str(),
            n,
            reason: "too few qubits",
        });
    }
    let edges = match kind {
        ClusterKind::Chain => (1..n).map(|i| (i, i + 1)).collect(),
        ClusterKind::Box => {
            let half = n / 2;
            let rungs = (1..=half).map(|k| (2 * k - 1, 2 * k));
            let odd_rail = (1..half).map(|k| (2 * k - 1, 2 * k + 1));
            let even_rail = (1..half).map(|k| (2 * k, 2 * k + 2));
            rungs.chain(odd_rail).chain(even_rail).collect()
        }
    };
    Ok(ClusterTopology {
        kind,
        n_qubits: n,
        edges,
    })
}

/// Applies CZ along every edge, in the given order, to `|+>^{⊗N}`.
pub fn prepare_with_order(t: &ClusterTopology, order: &[Edge]) -> Result<StateVector> {
    let mut state = StateVector::plus_n(t.n_qubits)?;
    for &(a, b) in order {
        state = apply_cz(&state, a - 1, b - 1)?;
    }
    Ok(state)
}

/// Prepares `|C> = Π CZ_(a,a') |+>^{⊗N}` for the topology.
pub fn prepare_cluster(t: &ClusterTopology) -> Result<StateVector> {
    let order: Vec<Edge> = t.edges.iter().copied().collect();
    prepare_with_order(t, &order)
}

/// Stabilizer generator `K_a = X_a Π_{a' ~ a} Z_a'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    /// Logical label of the qubit carrying the `X`.
    pub center: usize,
    pub pauli: PauliString,
}

/// One generator per qubit, ordered by centre label `1..=N`.
pub fn stabilizer_generators(t: &ClusterTopology) -> Vec<Stabilizer> {
    (1..=t.n_qubits)
        .map(|a| {
            let mut p = PauliString::identity(t.n_qubits);
            p.set(a - 1, Pauli::X);
            for b in t.neighbors(a) {
                p.set(b - 1, Pauli::Z);
            }
            Stabilizer { center: a, pauli: p }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::expectation;
    use crate::testutil::{dense_2q, dense_pauli};
    use crate::qsim::Unitary2Q;
    use nalgebra::DVector;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;

    fn edges(list: &[(usize, usize)]) -> BTreeSet<Edge> {
        list.iter().copied().collect()
    }

    #[test]
    fn chain_six_is_a_path() {
        let t = build_topology(ClusterKind::Chain, 6).unwrap();
        assert_eq!(t.edges(), &edges(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]));
    }

    #[test]
    fn box_six_is_a_ladder() {
        let t = build_topology(ClusterKind::Box, 6).unwrap();
        assert_eq!(
            t.edges(),
            &edges(&[(1, 2), (3, 4), (5, 6), (1, 3), (3, 5), (2, 4), (4, 6)])
        );
        let t4 = build_topology(ClusterKind::Box, 4).unwrap();
        assert_eq!(t4.edges(), &edges(&[(1, 2), (1, 3), (2, 4), (3, 4)]));
    }

    #[test]
    fn invalid_sizes() {
        assert!(build_topology(ClusterKind::Chain, 5).is_err());
        assert!(build_topology(ClusterKind::Chain, 0).is_err());
        assert!(build_topology(ClusterKind::Box, 2).is_err());
        assert!(build_topology(ClusterKind::Box, 7).is_err());
    }

    #[test]
    fn topologies_are_connected_and_bipartite() {
        for kind in [ClusterKind::Box, ClusterKind::Chain] {
            for n in (4..=14).step_by(2) {
                let t = build_topology(kind, n).unwrap();
                assert!(t.is_connected());
                let col = t.two_coloring();
                assert!(t.edges().iter().all(|&(a, b)| col[a] != col[b]));
            }
        }
    }

    #[test]
    fn chain_two_matches_dense_oracle() {
        let t = build_topology(ClusterKind::Chain, 2).unwrap();
        let s = prepare_cluster(&t).unwrap();
        let pp = DVector::from_element(4, crate::C64::new(0.5, 0.0));
        let want = dense_2q(&Unitary2Q::cz(), 2, 0, 1) * pp;
        for (g, w) in s.amplitudes().iter().zip(want.iter()) {
            assert!((g - w).norm() < 1e-12);
        }
    }

    #[test]
    fn generators_verbatim() {
        let chain: Vec<String> = stabilizer_generators(&build_topology(ClusterKind::Chain, 6).unwrap())
            .iter()
            .map(|s| s.pauli.to_string())
            .collect();
        assert_eq!(chain, ["XZIIII", "ZXZIII", "IZXZII", "IIZXZI", "IIIZXZ", "IIIIZX"]);
        let bx: Vec<String> = stabilizer_generators(&build_topology(ClusterKind::Box, 6).unwrap())
            .iter()
            .map(|s| s.pauli.to_string())
            .collect();
        assert_eq!(bx, ["XZZIII", "ZXIZII", "ZIXZZI", "IZZXIZ", "IIZIXZ", "IIIZZX"]);
    }

    #[test]
    fn generators_commute_by_matrix_oracle() {
        for kind in [ClusterKind::Box, ClusterKind::Chain] {
            for n in [4, 6] {
                let gens = stabilizer_generators(&build_topology(kind, n).unwrap());
                let mats: Vec<_> = gens.iter().map(|g| dense_pauli(&g.pauli)).collect();
                for a in &mats {
                    for b in &mats {
                        assert!((a * b - b * a).iter().all(|z| z.norm() < 1e-12));
                    }
                }
            }
        }
    }

    #[test]
    fn stabilizers_have_unit_expectation() {
        for kind in [ClusterKind::Box, ClusterKind::Chain] {
            for n in (4..=12).step_by(2) {
                let t = build_topology(kind, n).unwrap();
                let s = prepare_cluster(&t).unwrap();
                for g in stabilizer_generators(&t) {
                    assert!((expectation(&s, &g.pauli).unwrap() - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn topology_json_round_trip_and_validation() {
        let t = build_topology(ClusterKind::Box, 6).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"kind\":\"box\""));
        let back: ClusterTopology = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"kind":"chain","n_qubits":4,"edges":[[1,2],[2,3]]}"#;
        assert!(serde_json::from_str::<ClusterTopology>(bad).is_err());
    }

    proptest! {
        #[test]
        fn preparation_is_independent_of_edge_order(seed in any::<u64>(), box_kind in any::<bool>()) {
            let kind = if box_kind { ClusterKind::Box } else { ClusterKind::Chain };
            let t = build_topology(kind, 6).unwrap();
            let mut order: Vec<Edge> = t.edges().iter().copied().collect();
            order.shuffle(&mut crate::qsim::seeded_rng(seed));
            let a = prepare_cluster(&t).unwrap();
            let b = prepare_with_order(&t, &order).unwrap();
            prop_assert!((a.fidelity(&b).unwrap() - 1.0).abs() < 1e-12);
            prop_assert!(a.amplitudes().iter().zip(b.amplitudes()).all(|(x, y)| (x - y).norm() < 1e-12));
        }
    }
}
