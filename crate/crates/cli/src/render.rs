use crate::cli::{Cli, Format};
use std::io::Write;

/// A command result in both wire forms.
pub struct Body {
    pub json: serde_json::Value,
    pub tsv: String,
}

pub fn emit(cli: &Cli, body: &Body) -> std::io::Result<()> {
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&body.json).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Tsv => body.tsv.clone(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

pub struct Tsv(String);

impl Tsv {
    pub fn new(header: &[&str]) -> Self {
        let mut s = header.join("\t");
        s.push('\n');
        Self(s)
    }

    pub fn row(&mut self, cells: &[String]) {
        self.0.push_str(&cells.join("\t"));
        self.0.push('\n');
    }

    pub fn finish(self) -> String {
        self.0
    }
}
