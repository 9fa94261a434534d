fn main() {
    std::process::exit(ratdyn::cli::main_with_args(std::env::args_os()));
}
