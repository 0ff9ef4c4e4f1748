fn main() {
    env_logger::init();
    std::process::exit(lacuna_cli::run(std::env::args_os()));
}
