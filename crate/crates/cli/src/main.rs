fn main() {
    std::process::exit(hyperlift_cli::main_with_args(std::env::args_os()));
}
