fn main() {
    std::process::exit(seqlab::cli::run());
}
