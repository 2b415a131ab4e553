fn main() {
    std::process::exit(blockcomb::cli::run(std::env::args_os()));
}
