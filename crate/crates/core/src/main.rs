fn main() {
    std::process::exit(octupolar::cli::run(std::env::args_os()));
}
