use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (text, code) = nearsemi::cli::run(std::env::args_os());
    let written = if code == 2 {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    match written {
        Ok(()) => ExitCode::from(code as u8),
        Err(_) => ExitCode::from(2),
    }
}
