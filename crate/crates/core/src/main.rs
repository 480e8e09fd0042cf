fn main() {
    std::process::exit(algint::cli::cli_main(std::env::args_os()));
}
