fn main() {
    std::process::exit(cluster_teleport::harness::cli::run(std::env::args_os()));
}
