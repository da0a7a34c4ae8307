fn main() {
    std::process::exit(multicurve_cli::run(std::env::args_os()));
}
