//! The measure-and-prepare strategy as a classical reference for teleportation.
//!
//! cargo run --example measure_prepare

use cluster_teleport::teleport::measure_prepare_baseline;
use cluster_teleport::tomography::{
    classify, process_fidelity, process_tomo_1q, state_fidelity, ProcessMatrix, TomographyOutputs,
};

fn main() -> cluster_teleport::Result<()> {
    let outputs = TomographyOutputs::from_fn(|input| measure_prepare_baseline(&input.state()))?;
    for input in cluster_teleport::tomography::CanonicalInput::ALL {
        let rho = outputs.get(input);
        println!(
            "|{:<4}> -> {:?}  F_s = {:.4}",
            input.to_string(),
            rho,
            state_fidelity(&input.state(), rho)?
        );
    }
    let chi = process_tomo_1q(&outputs)?;
    let report = classify(process_fidelity(&chi, &ProcessMatrix::identity_process()))?;
    println!(
        "F_p = {:.4} (bound {}), average F_s = {:.4} (bound {}), beats classical: {}",
        report.f_process, report.f_c_threshold, report.f_avg_state, report.f_s_threshold, report.surpasses_classical
    );
    Ok(())
}
