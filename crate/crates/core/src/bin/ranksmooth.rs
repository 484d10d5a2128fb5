fn main() {
    std::process::exit(ranksmooth::cli::main());
}
