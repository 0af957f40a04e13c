fn main() {
    std::process::exit(gts::cli::main_exit_code());
}
