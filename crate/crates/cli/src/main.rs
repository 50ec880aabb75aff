fn main() {
    std::process::exit(theta_cli::run_command(std::env::args_os()));
}
