use std::io::{self, Write};

fn main() {
    let (code, out, err) = nilclean_cli::run_with(std::env::args_os(), &mut io::stdin());
    io::stdout().write_all(out.as_bytes()).ok();
    io::stderr().write_all(err.as_bytes()).ok();
    std::process::exit(code);
}
