use std::io::Write;

fn main() {
    let (code, report) = lieco_cli::run_command(std::env::args_os());
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(report.as_bytes());
    let _ = out.flush();
    std::process::exit(code);
}
