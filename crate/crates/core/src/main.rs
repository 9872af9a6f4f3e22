fn main() {
    std::process::exit(char2::cli::main_with(std::env::args_os()));
}
