fn main() {
    std::process::exit(qbn_walk::cli::run(std::env::args_os()));
}
