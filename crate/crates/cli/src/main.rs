fn main() {
    std::process::exit(trigsum_cli::run(std::env::args().collect()))
}
