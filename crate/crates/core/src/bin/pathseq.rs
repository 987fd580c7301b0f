fn main() {
    std::process::exit(pathseq::cli::run(std::env::args_os()));
}
