fn main() {
    std::process::exit(kkg::run(std::env::args_os()));
}
