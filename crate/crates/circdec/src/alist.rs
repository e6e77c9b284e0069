//! Reader and writer for the alist sparse-matrix text format (column-major
//! neighbor lists with a dimensions/max-degree header, as used for LDPC
//! parity-check matrices).
//!
//! Layout: `n m`, then `max_col_degree max_row_degree`, then the n column
//! degrees, the m row degrees, one line of 1-based row indices per column and
//! one line of 1-based column indices per row. Zero padding entries are
//! accepted on input and never written.

use crate::gf::BinaryMatrix;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlistError {
    #[error("unexpected end of file while reading {0}")]
    Truncated(&'static str),
    #[error("bad integer {token:?} in {context}")]
    BadInteger { token: String, context: &'static str },
    #[error("index {index} out of range ({context}, limit {limit})")]
    IndexOutOfRange {
        index: usize,
        context: &'static str,
        limit: usize,
    },
    #[error("degree list does not match neighbor lists: {0}")]
    DegreeMismatch(&'static str),
    #[error("row and column neighbor lists disagree at row {row}, col {col}")]
    Asymmetric { row: usize, col: usize },
}

pub fn write_alist(m: &BinaryMatrix) -> String {
    let n = m.cols();
    let rows = m.rows();
    let col_lists: Vec<Vec<usize>> = (0..n)
        .map(|c| (0..rows).filter(|&r| m.get(r, c)).collect())
        .collect();
    let row_lists: Vec<Vec<usize>> = (0..rows)
        .map(|r| (0..n).filter(|&c| m.get(r, c)).collect())
        .collect();
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);

    let mut out = String::new();
    out.push_str(&format!("{} {}\n", n, rows));
    out.push_str(&format!("{} {}\n", max_col, max_row));
    let degs: Vec<String> = col_lists.iter().map(|l| l.len().to_string()).collect();
    out.push_str(&degs.join(" "));
    out.push('\n');
    let degs: Vec<String> = row_lists.iter().map(|l| l.len().to_string()).collect();
    out.push_str(&degs.join(" "));
    out.push('\n');
    for list in &col_lists {
        let ids: Vec<String> = list.iter().map(|&r| (r + 1).to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    for list in &row_lists {
        let ids: Vec<String> = list.iter().map(|&c| (c + 1).to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_alist(text: &str) -> Result<BinaryMatrix, AlistError> {
    let mut tokens = text.split_whitespace();
    let mut next = |context: &'static str| -> Result<usize, AlistError> {
        let tok = tokens.next().ok_or(AlistError::Truncated(context))?;
        tok.parse::<usize>().map_err(|_| AlistError::BadInteger {
            token: tok.to_string(),
            context,
        })
    };

    let n = next("dimensions")?;
    let m = next("dimensions")?;
    let _max_col = next("max degrees")?;
    let _max_row = next("max degrees")?;
    let col_degs: Vec<usize> = (0..n)
        .map(|_| next("column degrees"))
        .collect::<Result<_, _>>()?;
    let row_degs: Vec<usize> = (0..m)
        .map(|_| next("row degrees"))
        .collect::<Result<_, _>>()?;

    let mut mat = BinaryMatrix::zeros(m, n);
    for (c, &deg) in col_degs.iter().enumerate() {
        let mut seen = 0usize;
        // Read exactly `deg` nonzero entries; tolerate zero padding by
        // consuming tokens until the count is met only when padding is
        // absent, so unpadded and fully padded files both parse.
        while seen < deg {
            let v = next("column neighbor list")?;
            if v == 0 {
                continue;
            }
            if v > m {
                return Err(AlistError::IndexOutOfRange {
                    index: v,
                    context: "column neighbor list",
                    limit: m,
                });
            }
            mat.set(v - 1, c, true);
            seen += 1;
        }
    }
    for (r, &deg) in row_degs.iter().enumerate() {
        let mut seen = 0usize;
        while seen < deg {
            let v = next("row neighbor list")?;
            if v == 0 {
                continue;
            }
            if v > n {
                return Err(AlistError::IndexOutOfRange {
                    index: v,
                    context: "row neighbor list",
                    limit: n,
                });
            }
            if !mat.get(r, v - 1) {
                return Err(AlistError::Asymmetric { row: r, col: v - 1 });
            }
            seen += 1;
        }
        if mat.row_weight(r) != deg {
            return Err(AlistError::DegreeMismatch(
                "row weight differs from declared degree",
            ));
        }
    }
    Ok(mat)
}
