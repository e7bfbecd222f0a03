fn main() {
    std::process::exit(bode_pid::cli::run(std::env::args_os()));
}
