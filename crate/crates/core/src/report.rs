//! Deterministic text and CSV rendering of command results.

use std::fmt::Write as _;

use crate::chaincx::{GradedComplex, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// The input breaks a law it is required to satisfy.
    ValidationFailure,
    /// Two computations that must agree do not, or an expectation failed.
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ValidationFailure => 2,
            Status::Mismatch => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ValidationFailure => "validation-failure",
            Status::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, header: &[&str]) -> Table {
        Table {
            title: title.to_string(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }

    /// A boundary matrix with target labels down the side and source labels
    /// across the top.
    pub fn matrix(title: &str, m: &RationalMatrix, row_labels: &[String], col_labels: &[String]) -> Table {
        let mut header = vec![String::new()];
        header.extend(col_labels.iter().cloned());
        let rows = (0..m.rows())
            .map(|r| {
                let mut row = vec![row_labels[r].clone()];
                row.extend((0..m.cols()).map(|c| m.get(r, c).to_string()));
                row
            })
            .collect();
        Table {
            title: title.to_string(),
            header,
            rows,
        }
    }

    pub fn boundaries(prefix: &str, c: &GradedComplex) -> Vec<Table> {
        (1..=c.max_degree())
            .filter(|&k| c.dim(k) > 0 && c.dim(k - 1) > 0)
            .map(|k| {
                Table::matrix(
                    &format!("{prefix} C{k} -> C{}", k - 1),
                    c.boundary(k),
                    c.labels(k - 1),
                    c.labels(k),
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub instance: String,
    pub status: Status,
    pub notes: Vec<String>,
    pub tables: Vec<Table>,
}

pub fn render_vector(v: &[usize]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl Report {
    pub fn new(command: &str, instance: &str) -> Report {
        Report {
            command: command.to_string(),
            instance: instance.to_string(),
            status: Status::Ok,
            notes: Vec::new(),
            tables: Vec::new(),
        }
    }

    /// Raises the status; a worse status is never lowered.
    pub fn escalate(&mut self, status: Status) {
        self.status = self.status.max(status);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "instance: {}", self.instance);
        let _ = writeln!(out, "status: {}", self.status.as_str());
        for n in &self.notes {
            let _ = writeln!(out, "- {n}");
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n[{}]", t.title);
            let cols = t.header.len().max(t.rows.iter().map(|r| r.len()).max().unwrap_or(0));
            let mut width = vec![0; cols];
            for row in std::iter::once(&t.header).chain(&t.rows) {
                for (i, c) in row.iter().enumerate() {
                    width[i] = width[i].max(c.chars().count());
                }
            }
            for row in std::iter::once(&t.header).chain(&t.rows) {
                let line: Vec<String> = row.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = width[i])).collect();
                let _ = writeln!(out, "{}", line.join("  ").trim_end());
            }
        }
        out
    }

    /// One CSV stream: a `report` record, one `note` record per note, then
    /// for every table a `header` record and a `row` record per row, each
    /// led by the table title.
    pub fn render_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let mut write = |rec: Vec<&str>| w.write_record(rec).expect("writing to memory");
        write(vec!["report", &self.command, &self.instance, self.status.as_str()]);
        for n in &self.notes {
            write(vec!["note", n]);
        }
        for t in &self.tables {
            let mut rec = vec!["header", t.title.as_str()];
            rec.extend(t.header.iter().map(|s| s.as_str()));
            write(rec);
            for row in &t.rows {
                let mut rec = vec!["row", t.title.as_str()];
                rec.extend(row.iter().map(|s| s.as_str()));
                write(rec);
            }
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("homology", "demo");
        r.note("betti (1,0,1)");
        let mut t = Table::new("betti", &["degree", "betti"]);
        t.push(["0", "1"]);
        t.push(["1", "0"]);
        r.table(t);
        r
    }

    #[test]
    fn text_layout() {
        assert_eq!(
            sample().render_text(),
            "command: homology\ninstance: demo\nstatus: ok\n- betti (1,0,1)\n\n[betti]\ndegree  betti\n0       1\n1       0\n"
        );
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().render_csv(),
            "report,homology,demo,ok\nnote,\"betti (1,0,1)\"\nheader,betti,degree,betti\nrow,betti,0,1\nrow,betti,1,0\n"
        );
    }

    #[test]
    fn status_only_rises() {
        let mut r = sample();
        r.escalate(Status::Mismatch);
        r.escalate(Status::ValidationFailure);
        assert_eq!(r.status.exit_code(), 3);
    }
}
