fn main() {
    std::process::exit(fsol_cli::run(std::env::args_os()));
}
