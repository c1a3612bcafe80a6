fn main() {
    std::process::exit(fmcalc::cli::run(std::env::args_os()));
}
