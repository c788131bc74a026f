fn main() {
    let code = osshift::cli::run(std::env::args_os());
    std::process::exit(code);
}
