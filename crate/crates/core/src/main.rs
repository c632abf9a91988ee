fn main() {
    let (code, out) = homlie::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
