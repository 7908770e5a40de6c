fn main() {
    std::process::exit(jacobi_harmonic::cli::run(std::env::args_os()));
}
