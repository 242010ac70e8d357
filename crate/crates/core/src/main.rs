fn main() {
    std::process::exit(repnorm::cli::run_from(std::env::args_os()));
}
