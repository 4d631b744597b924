fn main() {
    std::process::exit(linchrom::run(std::env::args_os()));
}
