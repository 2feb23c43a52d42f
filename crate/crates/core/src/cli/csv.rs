use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

/// Column-oriented table rendered with `{:.16e}` (17 significant digits).
#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    header: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    footer: Vec<String>,
}

impl CsvTable {
    pub fn new(header: Vec<String>, columns: Vec<String>) -> Self {
        Self {
            header,
            columns,
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_footer(&mut self, line: String) {
        self.footer.push(line);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for line in &self.header {
            let _ = writeln!(s, "# {line}");
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{v:.16e}");
            }
            s.push('\n');
        }
        for line in &self.footer {
            let _ = writeln!(s, "# {line}");
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.render())?;
        Ok(())
    }
}
