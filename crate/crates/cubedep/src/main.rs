fn main() {
    std::process::exit(cubedep::cli::run_cli(std::env::args_os()));
}
