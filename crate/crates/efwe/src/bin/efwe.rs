fn main() {
    std::process::exit(efwe::cli::run());
}
