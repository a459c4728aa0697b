fn main() {
    std::process::exit(rimtori::cli::main_with_args(std::env::args_os()));
}
