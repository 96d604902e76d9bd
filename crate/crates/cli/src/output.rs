//! Result envelope, JSON and CSV emission.

use std::io::Write;

use serde::Serialize;

pub const SCHEMA_ID: &str = "scarflab.result.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    status: &'static str,
    data: &'a T,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write_to(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn render_json<T: Serialize>(command: &str, consistent: bool, data: &T) -> String {
    let env = Envelope {
        schema: SCHEMA_ID,
        command,
        status: if consistent { "ok" } else { "violation" },
        data,
    };
    serde_json::to_string_pretty(&env).expect("payloads serialize") + "\n"
}

/// Comma-separated coordinates, the wire format for points.
pub fn point_text(coords: &[u32]) -> String {
    coords
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Whitespace-separated points, the wire format for faces.
pub fn face_text(points: &[Vec<u32>]) -> String {
    points
        .iter()
        .map(|p| point_text(p))
        .collect::<Vec<_>>()
        .join(" ")
}
