use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    JsonLines,
}

/// Report writer. Everything except the header is a pure function of the
/// arguments, so `--no-header` output is byte-identical across runs.
pub struct Sink {
    out: Box<dyn Write>,
    pub format: Format,
    header: bool,
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format, header: bool) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Sink {
            out,
            format,
            header,
        })
    }

    /// Provenance block: command, echoed parameters and wall-clock time.
    pub fn header(&mut self, command: &str, params: &[(&str, String)]) -> io::Result<()> {
        if !self.header {
            return Ok(());
        }
        let unix_time = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        match self.format {
            Format::JsonLines => {
                let params: serde_json::Map<String, serde_json::Value> = params
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone().into()))
                    .collect();
                let line = serde_json::json!({
                    "header": {
                        "tool": "cyclen",
                        "version": env!("CARGO_PKG_VERSION"),
                        "command": command,
                        "params": params,
                        "unix_time": unix_time,
                    }
                });
                writeln!(self.out, "{line}")
            }
            Format::Text | Format::Csv => {
                writeln!(self.out, "# cyclen {} {command}", env!("CARGO_PKG_VERSION"))?;
                for (k, v) in params {
                    writeln!(self.out, "# {k}: {v}")?;
                }
                writeln!(self.out, "# unix_time: {unix_time}")
            }
        }
    }

    /// CSV column names; part of the header, so `--no-header` drops them.
    pub fn columns(&mut self, names: &[&str]) -> io::Result<()> {
        if self.header && self.format == Format::Csv {
            writeln!(self.out, "{}", names.join(","))?;
        }
        Ok(())
    }

    /// One record in whichever format is active: `cells` for text and CSV,
    /// `record` for JSON lines.
    pub fn record<S: Serialize>(&mut self, cells: &[String], record: &S) -> io::Result<()> {
        match self.format {
            Format::Text => writeln!(self.out, "{}", cells.join("  ")),
            Format::Csv => writeln!(self.out, "{}", cells.join(",")),
            Format::JsonLines => {
                serde_json::to_writer(&mut self.out, record)?;
                writeln!(self.out)
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}
