fn main() {
    std::process::exit(cartierlab::cli::main_with_args(std::env::args_os()));
}
