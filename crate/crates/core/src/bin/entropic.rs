fn main() {
    std::process::exit(entropic::cli::main_with(std::env::args_os()));
}
