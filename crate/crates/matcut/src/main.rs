fn main() {
    std::process::exit(matcut::cli::main_with(std::env::args_os()));
}
