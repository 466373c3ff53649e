fn main() {
    std::process::exit(pivotal::cli::run());
}
