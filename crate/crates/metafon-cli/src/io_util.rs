use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;

/// Line iterator over a file, or stdin when no path is given.
pub fn input_lines(
    path: Option<&Path>,
) -> anyhow::Result<Box<dyn Iterator<Item = io::Result<String>>>> {
    match path {
        Some(p) => {
            let file =
                File::open(p).with_context(|| format!("cannot open input '{}'", p.display()))?;
            Ok(Box::new(BufReader::new(file).lines()))
        }
        None => Ok(Box::new(io::stdin().lock().lines())),
    }
}

pub fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    let mut buf = String::new();
    match path {
        Some(p) => {
            File::open(p)
                .with_context(|| format!("cannot open input '{}'", p.display()))?
                .read_to_string(&mut buf)
                .with_context(|| format!("cannot read '{}'", p.display()))?;
        }
        None => {
            io::stdin()
                .lock()
                .read_to_string(&mut buf)
                .context("cannot read stdin")?;
        }
    }
    Ok(buf)
}

/// Buffered writer to a file, or stdout when no path is given.
pub fn output_writer(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let file =
                File::create(p).with_context(|| format!("cannot create '{}'", p.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}
