fn main() {
    std::process::exit(powfrac::cli::run(std::env::args_os()));
}
