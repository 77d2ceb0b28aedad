fn main() {
    std::process::exit(hyperturan::cli::run(std::env::args_os()));
}
