fn main() {
    std::process::exit(symef1::cli::run());
}
