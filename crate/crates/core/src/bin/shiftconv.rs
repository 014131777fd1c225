fn main() {
    std::process::exit(shiftconv::cli::main_entry());
}
