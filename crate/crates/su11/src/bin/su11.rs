fn main() {
    std::process::exit(su11::cli::run());
}
