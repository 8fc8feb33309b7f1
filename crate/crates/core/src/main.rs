fn main() {
    std::process::exit(clique_agg::cli::run(std::env::args_os()));
}
