use std::fs;
use std::io::Write;
use std::process::ExitCode;

use zrl_cli::{emit_metadata, emit_report, execute, parse_args, CliError};

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Clap(e)) => e.exit(),
        Err(e) => {
            eprintln!("zrl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run() -> Result<u8, CliError> {
    let cfg = parse_args(std::env::args_os())?;
    let outcome = execute(&cfg)?;
    let data = emit_report(&outcome.doc, cfg.format);
    let meta = emit_metadata(&outcome.doc);
    let io_err = |path: &std::path::Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    match &cfg.out {
        Some(path) => {
            fs::write(path, &data).map_err(io_err(path))?;
            let mut meta_path = path.clone().into_os_string();
            meta_path.push(".meta.json");
            let meta_path = std::path::PathBuf::from(meta_path);
            fs::write(&meta_path, &meta).map_err(io_err(&meta_path))?;
        }
        None => {
            std::io::stdout().write_all(&data).map_err(io_err("<stdout>".as_ref()))?;
            std::io::stderr().write_all(&meta).map_err(io_err("<stderr>".as_ref()))?;
        }
    }
    Ok(outcome.exit_code() as u8)
}
