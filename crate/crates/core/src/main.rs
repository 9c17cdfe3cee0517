fn main() {
    std::process::exit(tunnelsplit::cli::run(std::env::args_os()));
}
