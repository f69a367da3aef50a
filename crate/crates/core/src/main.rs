fn main() {
    std::process::exit(ffvar::cli::run(std::env::args_os()));
}
