fn main() {
    std::process::exit(radzero_cli::run());
}
