fn main() {
    std::process::exit(clusterknots::cli::run(std::env::args_os()));
}
