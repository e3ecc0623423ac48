use std::io::Write;

fn main() {
    let out = carnot_cli::run(std::env::args_os(), &mut std::io::stdin());
    // A closed pipe downstream is not our error.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
