use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (out, code) = clifford_count::cli::run_command(&argv);
    let mut stream: Box<dyn Write> = if code == 2 { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = stream.write_all(out.as_bytes());
    std::process::exit(code);
}
