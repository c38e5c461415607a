fn main() {
    std::process::exit(modlab_cli::run(std::env::args_os()));
}
