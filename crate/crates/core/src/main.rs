fn main() {
    std::process::exit(covlab::cli::run(std::env::args_os()));
}
