fn main() {
    std::process::exit(qdeform::cli::run(std::env::args_os()));
}
