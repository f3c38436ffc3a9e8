fn main() {
    std::process::exit(iesds::cli::run(std::env::args_os()));
}
