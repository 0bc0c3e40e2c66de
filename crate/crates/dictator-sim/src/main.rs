fn main() {
    std::process::exit(dictator_sim::cli::cli_main(std::env::args_os()));
}
