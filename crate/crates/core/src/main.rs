fn main() {
    std::process::exit(graded_kummer::cli::main());
}
