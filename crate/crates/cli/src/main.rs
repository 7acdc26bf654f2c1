fn main() -> std::process::ExitCode {
    qudit_cv_cli::main_entry()
}
