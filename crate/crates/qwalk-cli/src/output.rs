//! Deterministic output encoding. JSON floats are printed in scientific
//! notation with 12 significant digits and objects serialize with sorted
//! keys, so identical analyses produce byte-identical files; CSV uses the
//! same float format.

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::Value;
use std::io;
use std::path::PathBuf;

struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.11e}")
    }
}

pub fn json_string(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SciFormatter);
    v.serialize(&mut ser).expect("in-memory JSON serialization");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn fnum(x: f64) -> String {
    format!("{x:.11e}")
}

/// Writes to the path when given, stdout otherwise.
pub fn emit(out: &Option<PathBuf>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
