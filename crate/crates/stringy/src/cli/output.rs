//! Plain aligned-text tables and the versioned JSON envelope.
//!
//! JSON output is `{"schema": "stringy/1", "command": ..., "data": ...,
//! "meta": ...}`. The `data` section is a deterministic function of the
//! input and flags; timing lives in `meta` only.

use serde::Serialize;

pub const SCHEMA: &str = "stringy/1";

/// Renders an aligned text table.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate().take(cols) {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[i].saturating_sub(cell.chars().count());
            if i + 1 < cols {
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    emit(&mut out, &header_cells);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    emit(&mut out, &rule);
    for row in rows {
        emit(&mut out, row);
    }
    out
}

/// Wraps a command's data in the versioned envelope and pretty-prints it.
pub fn json_envelope<D: Serialize, M: Serialize>(command: &str, data: &D, meta: &M) -> String {
    #[derive(Serialize)]
    struct Envelope<'a, D, M> {
        schema: &'static str,
        command: &'a str,
        data: D,
        meta: M,
    }
    let envelope = Envelope { schema: SCHEMA, command, data, meta };
    serde_json::to_string_pretty(&envelope).expect("report serialization")
}

/// The data section alone, for byte-level determinism checks.
pub fn json_data_section<D: Serialize>(data: &D) -> String {
    serde_json::to_string_pretty(data).expect("data serialization")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let text = render_table(
            &["name", "n"],
            &[
                vec!["a".into(), "10".into()],
                vec!["longer".into(), "3".into()],
            ],
        );
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "name    n");
        assert_eq!(lines[1], "------  --");
        assert_eq!(lines[2], "a       10");
        assert_eq!(lines[3], "longer  3");
    }

    #[test]
    fn envelope_shape() {
        let text = json_envelope("info", &serde_json::json!({"k": 1}), &serde_json::json!({}));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["schema"], "stringy/1");
        assert_eq!(value["command"], "info");
        assert_eq!(value["data"]["k"], 1);
    }
}
