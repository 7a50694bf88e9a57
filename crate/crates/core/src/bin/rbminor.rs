use std::process::ExitCode;

fn main() -> ExitCode {
    let (result, summary) = match rbminor::cli::run(std::env::args_os()) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    println!("{}", result.render());
    eprintln!("{summary}");
    ExitCode::from(result.exit_code() as u8)
}
