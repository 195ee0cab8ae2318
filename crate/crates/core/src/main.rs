fn main() {
    std::process::exit(hopfcorr::cli::main_with(std::env::args_os()));
}
