fn main() {
    let result = sconn_cli::run(std::env::args_os());
    let code = result.exit_code();
    let mut text = result.payload;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if code == 0 {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    std::process::exit(code);
}
