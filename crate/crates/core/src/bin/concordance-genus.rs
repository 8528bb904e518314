use std::io::Write;

fn main() {
    let r = concordance_genus::cli::run(std::env::args_os());
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(r.code);
}
