use serde::Serialize;

use crate::Format;

/// A list of per-diagram records, one text line (or block) each.
pub struct Records<'a, T>(pub &'a [T]);

pub fn render<T: Serialize>(format: Format, records: &Records<'_, T>, line: impl Fn(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(records.0).expect("records serialize") + "\n",
        Format::Text => records.0.iter().map(|r| line(r) + "\n").collect(),
    }
}
