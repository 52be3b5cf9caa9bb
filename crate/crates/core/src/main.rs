fn main() {
    std::process::exit(galg::cli::main());
}
