fn main() {
    std::process::exit(orbitq_cli::main_with_args(std::env::args_os()));
}
