fn main() {
    std::process::exit(permcheck::run(std::env::args_os()));
}
