fn main() {
    std::process::exit(quantum_measurement::cli::main_with_args(std::env::args_os()));
}
