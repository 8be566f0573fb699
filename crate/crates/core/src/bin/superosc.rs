fn main() {
    std::process::exit(superosc::cli::main_with_args(std::env::args_os()));
}
