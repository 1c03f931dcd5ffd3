fn main() -> std::process::ExitCode {
    smallgon::cli::main_with_args(std::env::args_os())
}
