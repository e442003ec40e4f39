fn main() -> std::process::ExitCode {
    gfra::cli::main()
}
