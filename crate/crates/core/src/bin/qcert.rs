fn main() {
    std::process::exit(quadric_cert::cli::run(std::env::args_os()));
}
