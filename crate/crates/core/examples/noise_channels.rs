//! Process matrices of the three noise channels and their mutual fidelities,
//! followed by a depolarized teleportation run compared against each channel.
//!
//! cargo run --release --example noise_channels

use cluster_teleport::cluster::ClusterKind;
use cluster_teleport::harness::{evaluate_teleport, Mode};
use cluster_teleport::noise::{channel_chi, channel_fidelity, compare_with_default_channels, NoiseChannel, NoiseKind};

fn main() -> cluster_teleport::Result<()> {
    let channels: Vec<NoiseChannel> = NoiseKind::ALL.iter().map(|&k| NoiseChannel::default_for(k)).collect();
    for ch in &channels {
        let chi = channel_chi(ch);
        let diag: Vec<String> = (0..4).map(|m| format!("{:.4}", chi.entry(m, m).re)).collect();
        println!("{ch:<24} diag χ = [{}]", diag.join(", "));
    }
    println!();
    for a in &channels {
        for b in &channels {
            print!("{:>8.4}", channel_fidelity(&channel_chi(a), &channel_chi(b))?);
        }
        println!("   {}", a.kind());
    }

    println!("\ndepolarized teleportation, sampled 8192x10:");
    let depolarizing = NoiseChannel::default_for(NoiseKind::Depolarizing);
    for (kind, n) in [(ClusterKind::Box, 6), (ClusterKind::Chain, 6)] {
        let ev = evaluate_teleport(kind, n, Mode::Sampled, 8192, 10, 42, Some(&depolarizing))?;
        let c = compare_with_default_channels(&ev.chi)?;
        println!(
            "  {kind} N = {n}: F_p = {:.4}   F(χ, χ_D) = {:.4}   F(χ, χ_AD) = {:.4}   F(χ, χ_PD) = {:.4}",
            ev.fidelity.f_process, c.depolarizing, c.amplitude_damping, c.phase_damping
        );
    }
    Ok(())
}
