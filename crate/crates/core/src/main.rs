fn main() {
    std::process::exit(dunkl_sym::cli::main());
}
