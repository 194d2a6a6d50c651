fn main() -> std::process::ExitCode {
    ordlat::cli::main()
}
