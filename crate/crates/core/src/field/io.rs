//! Matrix text format: a header line `p rows cols` (`p = 0` for ℚ) followed by
//! `rows` lines of `cols` whitespace-separated entries (`a` or `a/b`).

use super::{FieldMatrix, FieldSpec};
use crate::error::{Error, Result};

pub fn parse_matrix(text: &str) -> Result<FieldMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (_, header) = lines.next().ok_or(Error::Syntax {
        pos: 0,
        msg: "empty matrix file".into(),
    })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [p, rows, cols] = head[..] else {
        return Err(Error::Syntax {
            pos: 0,
            msg: "header must be \"p rows cols\"".into(),
        });
    };
    let number = |s: &str| {
        s.parse::<u64>().map_err(|_| Error::Syntax {
            pos: 0,
            msg: format!("bad header field {s:?}"),
        })
    };
    let field = FieldSpec::new(number(p)?)?;
    let (rows, cols) = (number(rows)? as usize, number(cols)? as usize);

    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (line_no, line) in lines {
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != cols {
            return Err(Error::Syntax {
                pos: line_no + 1,
                msg: format!("line {} has {} entries, expected {cols}", line_no + 1, row.len()),
            });
        }
        for token in row {
            entries.push(field.parse_scalar(token).map_err(|e| match e {
                Error::Syntax { msg, .. } => Error::Syntax {
                    pos: line_no + 1,
                    msg: format!("line {}: {msg}", line_no + 1),
                },
                other => other,
            })?);
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(Error::Syntax {
            pos: text.lines().count(),
            msg: format!("expected {rows} rows, found {seen_rows}"),
        });
    }
    FieldMatrix::from_entries(field, rows, cols, entries)
}

pub fn render_matrix(m: &FieldMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.field().characteristic(), m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
