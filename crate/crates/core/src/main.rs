fn main() {
    std::process::exit(cavity_dj::cli::run(std::env::args_os()));
}
