fn main() {
    std::process::exit(lucas_congruences::cli::run(std::env::args_os()));
}
