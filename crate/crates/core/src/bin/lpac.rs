fn main() -> std::process::ExitCode {
    lpac::cli::main_with_args(std::env::args_os())
}
