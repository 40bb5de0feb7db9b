fn main() {
    std::process::exit(parsweep::cli::run_from(std::env::args_os()));
}
