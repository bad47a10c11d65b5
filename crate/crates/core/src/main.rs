fn main() {
    std::process::exit(structmor::cli::main());
}
