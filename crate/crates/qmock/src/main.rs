fn main() {
    std::process::exit(qmock::cli::run(std::env::args_os()));
}
