fn main() {
    std::process::exit(ghz_distill_cli::run_main(std::env::args_os()));
}
