//! Table and record writers for the two output formats.

use std::io::{self, Write};

use allhops::Dist;
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    #[value(name = "jsonl", alias = "json-lines")]
    Jsonl,
}

fn dist_json(d: Dist) -> Value {
    match d.finite() {
        Some(v) => json!(v),
        None => json!("inf"),
    }
}

/// Writes records with named integer fields followed by one distance.
pub struct Records<W: Write> {
    out: W,
    format: Format,
    fields: &'static [&'static str],
}

impl<W: Write> Records<W> {
    /// `header` controls the tsv `# ...` line.
    pub fn new(mut out: W, format: Format, fields: &'static [&'static str], header: bool) -> io::Result<Self> {
        if header && format == Format::Tsv {
            writeln!(out, "# {} d", fields.join(" "))?;
        }
        Ok(Records { out, format, fields })
    }

    pub fn write(&mut self, keys: &[usize], d: Dist) -> io::Result<()> {
        debug_assert_eq!(keys.len(), self.fields.len());
        match self.format {
            Format::Tsv => {
                for k in keys {
                    write!(self.out, "{k}\t")?;
                }
                writeln!(self.out, "{d}")
            }
            Format::Jsonl => {
                let mut obj = serde_json::Map::new();
                for (name, &k) in self.fields.iter().zip(keys) {
                    obj.insert((*name).to_string(), json!(k));
                }
                obj.insert("d".into(), dist_json(d));
                writeln!(self.out, "{}", Value::Object(obj))
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}
