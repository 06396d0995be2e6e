fn main() {
    std::process::exit(cyclic_ic::cli::run(std::env::args_os()));
}
