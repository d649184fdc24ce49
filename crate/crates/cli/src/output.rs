use std::io::{self, Write};

use clap::ValueEnum;
use fqmzv::fqpoly::Field;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Describes one field so output files are self-describing.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub modulus: String,
}

impl Meta {
    pub fn of(field: &Field) -> Self {
        let q = field.prime_power();
        Self {
            q: q.q(),
            p: q.p(),
            f: q.f(),
            modulus: field.modulus_text(),
        }
    }
}

/// Rows collected by a command, rendered at the end in the chosen format.
#[derive(Debug)]
pub struct Report {
    meta: Vec<Meta>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    records: Vec<Value>,
    text: Vec<String>,
    verdict: Option<String>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
            records: Vec::new(),
            text: Vec::new(),
            verdict: None,
        }
    }

    pub fn meta(&mut self, meta: Meta) {
        self.meta.push(meta);
    }

    /// Adds one result: its JSON record, CSV cells and text lines.
    pub fn push(&mut self, record: impl Serialize, row: Vec<String>, text: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.records
            .push(serde_json::to_value(record).expect("records serialize"));
        self.rows.push(row);
        self.text.extend(text);
    }

    pub fn verdict(&mut self, verdict: String) {
        self.verdict = Some(verdict);
    }

    pub fn render(&self, format: Format, banner: bool, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Text | Format::Csv => {
                if banner {
                    writeln!(out, "# fqmzv {}", env!("CARGO_PKG_VERSION"))?;
                }
                for m in &self.meta {
                    writeln!(out, "# q={} p={} f={} modulus={}", m.q, m.p, m.f, m.modulus)?;
                }
                if format == Format::Text {
                    for line in &self.text {
                        writeln!(out, "{line}")?;
                    }
                    if let Some(v) = &self.verdict {
                        writeln!(out, "{v}")?;
                    }
                } else {
                    if let Some(v) = &self.verdict {
                        writeln!(out, "# {v}")?;
                    }
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(&self.columns)?;
                    for row in &self.rows {
                        w.write_record(row)?;
                    }
                    w.flush()?;
                }
            }
            Format::Json => {
                let mut doc = json!({
                    "meta": self.meta,
                    "results": self.records,
                });
                if banner {
                    doc["version"] = json!(env!("CARGO_PKG_VERSION"));
                }
                if let Some(v) = &self.verdict {
                    doc["verdict"] = json!(v);
                }
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// `-8,2` style rendering of an index tuple.
pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let field = fqmzv::fqpoly::make_field(3, 2).unwrap();
        let mut r = Report::new(&["a", "b"]);
        r.meta(Meta::of(&field));
        r.push(json!({"a": 1, "b": "x,y"}), vec!["1".into(), "x,y".into()], vec!["a=1".into()]);
        r
    }

    fn render(r: &Report, format: Format, banner: bool) -> String {
        let mut buf = Vec::new();
        r.render(format, banner, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_quotes_commas() {
        let s = render(&sample(), Format::Csv, false);
        assert_eq!(s, "# q=9 p=3 f=2 modulus=x^2+1\na,b\n1,\"x,y\"\n");
    }

    #[test]
    fn banner_is_optional() {
        assert!(render(&sample(), Format::Text, true).starts_with("# fqmzv "));
        assert!(render(&sample(), Format::Text, false).starts_with("# q=9"));
        let j: Value = serde_json::from_str(&render(&sample(), Format::Json, false)).unwrap();
        assert!(j.get("version").is_none());
        assert_eq!(j["meta"][0]["modulus"], "x^2+1");
    }

    #[test]
    fn join_tuple() {
        assert_eq!(join(&[-8, 2]), "-8,2");
    }
}
