fn main() {
    std::process::exit(peakcell_cli::run(std::env::args_os()));
}
