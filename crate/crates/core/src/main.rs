fn main() {
    std::process::exit(info_exchange::cli::main());
}
