fn main() -> std::process::ExitCode {
    lurker::cli::main_entry()
}
