fn main() {
    std::process::exit(diversity::cli::main());
}
