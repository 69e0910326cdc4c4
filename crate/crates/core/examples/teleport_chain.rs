//! Chain-protocol teleportation of random pure states.
//!
//! cargo run --example teleport_chain [-- <n> <seed>]

use cluster_teleport::cluster::ClusterKind;
use cluster_teleport::qsim::{seeded_rng, StateVector};
use cluster_teleport::teleport::{run_protocol_exact, InputState, ProtocolConfig};
use cluster_teleport::C64;
use rand_distr::{Distribution, StandardNormal};

fn haar_qubit(rng: &mut impl rand::Rng) -> StateVector {
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    let amps = vec![C64::new(g(), g()), C64::new(g(), g())];
    StateVector::normalized(amps).expect("nonzero Gaussian vector")
}

fn main() -> cluster_teleport::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(8);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2024);
    let mut rng = seeded_rng(seed);

    for trial in 0..5 {
        let psi = haar_qubit(&mut rng);
        let a = psi.amplitudes();
        let cfg = ProtocolConfig::new(ClusterKind::Chain, n, InputState::Custom(psi.clone()))?;
        let records = run_protocol_exact(&cfg)?;
        let worst = records.iter().map(|r| r.fidelity).fold(1.0, f64::min);
        println!(
            "trial {trial}: |ψ> = ({:.3}{:+.3}i)|0> + ({:.3}{:+.3}i)|1>  branches {}  min fidelity {worst:.12}",
            a[0].re, a[0].im, a[1].re, a[1].im,
            records.len()
        );
    }
    Ok(())
}
