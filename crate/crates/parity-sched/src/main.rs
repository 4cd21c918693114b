fn main() {
    std::process::exit(parity_sched::cli::run());
}
