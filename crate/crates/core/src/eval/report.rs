use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Tsv,
    /// Space-aligned columns for the terminal.
    Text,
}

/// A named table. `notes` carry metadata such as lexicon versions; TSV
/// output writes them as leading `# ` lines.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Table {
        Table {
            name: name.into(),
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn clean(cell: &str) -> String {
    cell.replace(['\t', '\n', '\r'], " ")
}

/// Serializes `table`. Identical tables give identical bytes.
pub fn emit_report(table: &Table, format: ReportFormat) -> Vec<u8> {
    let mut out = String::new();
    match format {
        ReportFormat::Tsv => {
            for n in &table.notes {
                out.push_str("# ");
                out.push_str(&clean(n));
                out.push('\n');
            }
            let line = |cells: &[String]| cells.iter().map(|c| clean(c)).collect::<Vec<_>>().join("\t");
            out.push_str(&line(&table.columns));
            out.push('\n');
            for r in &table.rows {
                out.push_str(&line(r));
                out.push('\n');
            }
        }
        ReportFormat::Text => {
            out.push_str(&table.name);
            out.push('\n');
            for n in &table.notes {
                out.push_str("  ");
                out.push_str(n);
                out.push('\n');
            }
            let mut widths: Vec<usize> = table.columns.iter().map(|c| c.chars().count()).collect();
            for r in &table.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            out.push_str(&line(&table.columns));
            out.push('\n');
            for r in &table.rows {
                out.push_str(&line(r));
                out.push('\n');
            }
        }
    }
    out.into_bytes()
}
