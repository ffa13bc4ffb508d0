use std::io::{ErrorKind, Write};

fn main() {
    let out = kleinian::cli::run(std::env::args_os());
    if let Err(e) = std::io::stdout().write_all(&out.stdout) {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
