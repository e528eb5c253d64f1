use std::fs::File;
use std::io::{self, BufWriter, Write};

use fussnc::GroupSpec;
use serde_json::{json, Value};

/// Integers that do not fit a JSON number exactly are written as strings.
pub fn num(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn snum(x: i128) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

/// Writes records in the order given, each tagged with the run's context,
/// then a summary line.
pub struct Report {
    out: Box<dyn Write>,
    context: Value,
    records: usize,
    failed: usize,
    summary: Option<(Value, Value, bool)>,
    error: Option<io::Error>,
}

impl Report {
    pub fn open(path: &str, command: &str, family: &str, spec: &GroupSpec, k: usize) -> io::Result<Report> {
        let out: Box<dyn Write> = if path == "-" {
            Box::new(BufWriter::new(io::stdout().lock()))
        } else {
            Box::new(BufWriter::new(File::create(path)?))
        };
        let mut context = json!({ "schema": 1, "command": command, "family": family, "rank": spec.rank(), "k": k });
        if family == "I2" {
            context["m"] = json!(spec.param);
        }
        Ok(Report { out, context, records: 0, failed: 0, summary: None, error: None })
    }

    pub fn record(&mut self, fields: Value) {
        let mut rec = self.context.clone();
        if let (Some(dst), Value::Object(src)) = (rec.as_object_mut(), fields) {
            dst.extend(src);
        }
        self.records += 1;
        if rec["pass"] != Value::Bool(true) {
            self.failed += 1;
        }
        self.write(&rec);
    }

    /// Adds an `expected`/`actual` pair to the summary line.
    pub fn summary_check(&mut self, expected: Value, actual: Value, pass: bool) {
        self.summary = Some((expected, actual, pass));
    }

    fn write(&mut self, v: &Value) {
        if self.error.is_none() {
            if let Err(e) = writeln!(self.out, "{v}") {
                self.error = Some(e);
            }
        }
    }

    /// Writes the summary and reports whether everything passed.
    pub fn finish(mut self) -> io::Result<bool> {
        let mut pass = self.failed == 0;
        let mut s = self.context.clone();
        s["summary"] = json!(true);
        s["records"] = json!(self.records);
        s["failed"] = json!(self.failed);
        if let Some((expected, actual, ok)) = self.summary.take() {
            s["expected"] = expected;
            s["actual"] = actual;
            pass &= ok;
        }
        s["pass"] = json!(pass);
        self.write(&s);
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.out.flush()?;
        Ok(pass)
    }
}
