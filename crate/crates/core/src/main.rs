fn main() {
    std::process::exit(delay_logistic::cli::run(std::env::args_os()));
}
