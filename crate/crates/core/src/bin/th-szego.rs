fn main() {
    std::process::exit(th_szego::cli::run(std::env::args_os()));
}
