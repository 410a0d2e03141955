fn main() {
    std::process::exit(igmax::cli::main_with(std::env::args_os()));
}
