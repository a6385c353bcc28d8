fn main() {
    std::process::exit(fintop::cli::main());
}
