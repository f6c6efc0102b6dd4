fn main() {
    std::process::exit(hscat::cli::main_with_args(std::env::args_os()));
}
