fn main() {
    std::process::exit(coxtet_cli::main_with_args(std::env::args_os()));
}
