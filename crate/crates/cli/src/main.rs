use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use weylgen::{destination, run, RunConfig, OUT_DIR_ENV};

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run(&cfg);
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("weylgen: {msg}");
    }
    let Some(text) = outcome.render(cfg.format) else {
        return ExitCode::from(outcome.code);
    };
    let env_dir = env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let written = match destination(&cfg, env_dir.as_deref()) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                let _ = fs::create_dir_all(dir);
            }
            fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
    };
    match written {
        Ok(()) => ExitCode::from(outcome.code),
        Err(msg) => {
            eprintln!("weylgen: error: {msg}");
            ExitCode::from(2)
        }
    }
}
