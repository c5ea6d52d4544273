fn main() {
    std::process::exit(amalgam::cli::main(std::env::args_os()));
}
