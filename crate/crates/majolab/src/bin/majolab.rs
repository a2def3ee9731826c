fn main() {
    std::process::exit(majolab::cli::run());
}
