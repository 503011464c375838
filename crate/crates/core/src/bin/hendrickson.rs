use std::io::{self, Write};

fn main() {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = rigidity::cli::run(std::env::args_os(), &mut input, &mut out, &mut io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
