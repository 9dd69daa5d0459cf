fn main() {
    let code = hyperpoly::cli::run(std::env::args_os());
    std::process::exit(code);
}
