//! Process fidelity against the classical bound for every supported size,
//! ideal and depolarized.
//!
//! cargo run --release --example fidelity_sweep [-- <seed>]

use cluster_teleport::harness::{cmd_sweep, ExperimentConfig, Mode};
use cluster_teleport::cluster::ClusterKind;
use cluster_teleport::noise::{NoiseChannel, NoiseKind};

fn main() -> cluster_teleport::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let mut cfg = ExperimentConfig {
        mode: Mode::Sampled,
        seed: Some(seed),
        ..Default::default()
    };
    cfg.sweep.protocols = vec![ClusterKind::Box, ClusterKind::Chain];
    cfg.sweep.n = vec![4, 6, 8, 10, 12];

    for noise in [None, Some(NoiseChannel::default_for(NoiseKind::Depolarizing))] {
        cfg.noise = noise;
        let report = cmd_sweep(&cfg)?;
        println!("noise: {}", cfg.noise.as_ref().map_or("none".to_string(), |c| c.to_string()));
        for r in &report.rows {
            let bar = "#".repeat((r.f_process * 40.0).round() as usize);
            println!(
                "  {:<5} N={:<2}  F_p = {:.4} ± {:.4}  {}{}",
                r.protocol.to_string(),
                r.n,
                r.f_process,
                r.f_process_error,
                if r.surpasses_classical { "  " } else { "! " },
                bar
            );
        }
        println!("  classical bound F_C = {}\n", report.rows[0].f_c_threshold);
    }
    Ok(())
}
