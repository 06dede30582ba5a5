use std::io::Write;

fn main() {
    let (code, stdout, stderr) = prm_cli::commands::run(std::env::args_os());
    print!("{stdout}");
    eprint!("{stderr}");
    std::io::stdout().flush().ok();
    std::process::exit(code);
}
