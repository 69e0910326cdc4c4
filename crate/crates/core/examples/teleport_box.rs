//! Runs the box protocol on every branch and prints Alice's and the
//! participants' outcomes, Bob's correction and the final fidelity.
//!
//! cargo run --example teleport_box [-- <n> <zero|one|plus|r>]

use cluster_teleport::cluster::ClusterKind;
use cluster_teleport::teleport::{participant_basis, run_protocol_exact, ProtocolConfig};
use cluster_teleport::tomography::CanonicalInput;

fn main() -> cluster_teleport::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let input = match args.next().as_deref() {
        Some("zero") => CanonicalInput::Zero,
        Some("one") => CanonicalInput::One,
        Some("plus") => CanonicalInput::Plus,
        _ => CanonicalInput::R,
    };

    let bases: Vec<String> = (2..n)
        .map(|i| participant_basis(ClusterKind::Box, n, i).map(|b| format!("q{i}:{b:?}")))
        .collect::<Result<_, _>>()?;
    println!("box N = {n}, input |{input}>, participant bases {}", bases.join(" "));

    let records = run_protocol_exact(&ProtocolConfig::new(ClusterKind::Box, n, input)?)?;
    println!("{:>4}  {:<24} {:>10}  {:<14} {:<5} fidelity", "j", "m", "p", "word", "P");
    for r in &records {
        let m: Vec<&str> = r.m.iter().map(|&v| if v == 1 { "+" } else { "-" }).collect();
        println!(
            "{:>4}  {:<24} {:>10.6}  {:<14} {:<5} {:.12}",
            r.j.to_string(),
            m.join(""),
            r.probability,
            r.word.to_string(),
            r.correction.to_string(),
            r.fidelity
        );
    }
    let worst = records.iter().map(|r| r.fidelity).fold(1.0, f64::min);
    println!("{} branches, minimum fidelity {worst:.12}", records.len());
    Ok(())
}
