fn main() -> std::process::ExitCode {
    piezoharv::cli::run()
}
