use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::{CliError, CliResult};

fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", p.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn io_err(path: Option<&Path>, e: impl std::fmt::Display) -> CliError {
    let target = path.map_or_else(|| "stdout".to_string(), |p| p.display().to_string());
    CliError::Validation(format!("cannot write {target}: {e}"))
}

pub fn json<T: Serialize + ?Sized>(value: &T, path: Option<&Path>) -> CliResult<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| io_err(path, e))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| io_err(path, e))
}

pub fn csv<T: Serialize>(rows: &[T], path: Option<&Path>) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(sink(path)?);
    for r in rows {
        w.serialize(r).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}
