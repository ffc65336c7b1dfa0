fn main() {
    std::process::exit(frobcent::cli::run());
}
