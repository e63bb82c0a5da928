fn main() {
    std::process::exit(hecke_cli::run(std::env::args_os()));
}
