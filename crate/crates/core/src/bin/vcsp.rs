use std::io::Write;

fn main() {
    let out = vcsp::cli::run(std::env::args_os());
    eprint!("{}", out.stderr);
    print!("{}", out.stdout);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
