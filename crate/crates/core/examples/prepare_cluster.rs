//! Builds the six-qubit box and chain cluster states and checks that every
//! stabilizer generator has expectation +1.
//!
//! cargo run --example prepare_cluster [-- <n>]

use cluster_teleport::cluster::{build_topology, prepare_cluster, stabilizer_generators, ClusterKind};
use cluster_teleport::qsim::expectation;

fn main() -> cluster_teleport::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for kind in [ClusterKind::Box, ClusterKind::Chain] {
        let topology = build_topology(kind, n)?;
        let state = prepare_cluster(&topology)?;
        let edges: Vec<String> = topology.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        println!("{kind} cluster, N = {n}");
        println!("  edges: {}", edges.join(" "));
        for k in stabilizer_generators(&topology) {
            println!("  K_{:<2} = {}   <K> = {:+.6}", k.center, k.pauli, expectation(&state, &k.pauli)?);
        }
    }
    Ok(())
}
