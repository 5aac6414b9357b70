fn main() {
    std::process::exit(matdec_cli::run(std::env::args_os()));
}
