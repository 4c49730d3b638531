fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = stringy::cli::run(&argv, &mut out);
    std::process::exit(code);
}
