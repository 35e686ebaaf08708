fn main() {
    std::process::exit(symsq_cli::run(std::env::args_os()));
}
