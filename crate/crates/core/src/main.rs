fn main() {
    std::process::exit(bmetric::cli::main_entry());
}
