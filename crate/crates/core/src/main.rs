fn main() {
    std::process::exit(colorlie::cli::run(std::env::args_os()));
}
