fn main() {
    std::process::exit(nilquiver::cli::main_entry());
}
