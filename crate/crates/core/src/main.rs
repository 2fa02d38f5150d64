fn main() {
    std::process::exit(centrosim::cli::run(std::env::args_os()));
}
