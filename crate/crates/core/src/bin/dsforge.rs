fn main() {
    let (code, text) = dsforge::cli::run(std::env::args_os());
    if code == dsforge::cli::EXIT_INPUT && !text.trim_start().starts_with('{') {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    std::process::exit(code);
}
