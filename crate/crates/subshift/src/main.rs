fn main() -> std::process::ExitCode {
    subshift::cli::main()
}
