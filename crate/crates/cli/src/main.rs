fn main() {
    std::process::exit(funkdisc_cli::run(std::env::args_os()));
}
