//! Deterministic output formatting: CSV for curves, NDJSON for
//! diagnostics. Numbers carry 17 significant digits ('.' decimal,
//! '\n' line endings) so identical configs produce byte-identical files.

use std::io::Write;

/// 17 significant digits, round-trip exact for f64.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct CsvWriter<W: Write> {
    out: W,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut out: W, header: &[&str]) -> std::io::Result<Self> {
        out.write_all(header.join(",").as_bytes())?;
        out.write_all(b"\n")?;
        Ok(CsvWriter { out })
    }

    pub fn row(&mut self, values: &[f64]) -> std::io::Result<()> {
        let line = values.iter().map(|&v| fmt(v)).collect::<Vec<_>>().join(",");
        self.out.write_all(line.as_bytes())?;
        self.out.write_all(b"\n")
    }
}

/// One diagnostic record per line.
pub fn ndjson_record<W: Write>(
    out: &mut W,
    name: &str,
    verdict: bool,
    metrics: serde_json::Value,
) -> std::io::Result<()> {
    let record = serde_json::json!({
        "name": name,
        "verdict": if verdict { "pass" } else { "fail" },
        "metrics": metrics,
    });
    out.write_all(record.to_string().as_bytes())?;
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt(1.0), "1.0000000000000000e0");
        assert_eq!(fmt(0.1), "1.0000000000000001e-1");
        // round trip
        let v = 0.427_583_576_155_807_f64;
        let s = fmt(v);
        assert_eq!(s.parse::<f64>().unwrap(), v);
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        {
            let mut w = CsvWriter::new(&mut buf, &["t", "u"]).unwrap();
            w.row(&[1.0, 0.5]).unwrap();
        }
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,u\n1.0000000000000000e0,5.0000000000000000e-1\n");
    }
}
