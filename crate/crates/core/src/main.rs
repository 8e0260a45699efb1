fn main() -> std::process::ExitCode {
    extremal::cli::run(std::env::args_os())
}
