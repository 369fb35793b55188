fn main() {
    std::process::exit(renorm::cli::run(std::env::args_os()));
}
