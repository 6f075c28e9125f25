//! Matrix and vector file formats.
//!
//! Matrices arrive either as JSON (`{"rows": m, "cols": m, "data": [[re,
//! im], ...]}` row-major) or as plain text (first line `m m`, then `m` lines
//! of `2m` space-separated reals, re/im interleaved). The first non-blank
//! byte decides: `{` means JSON. Vector lists are JSON only.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use yamamoto_core::matcore::{CVector, ComplexMatrix};

/// On-disk matrix schema; also embedded in reports for every emitted matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct VectorFile {
    data: Vec<[f64; 2]>,
}

#[derive(Debug)]
pub enum FormatError {
    Io(std::io::Error),
    /// JSON syntax or schema problem, with serde's line/column rendering.
    Json(serde_json::Error),
    /// Plain-text problem at a one-based line number.
    Text { line: usize, what: String },
    Shape(String),
    NonFinite,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Io(e) => write!(f, "cannot read input: {e}"),
            FormatError::Json(e) => write!(f, "JSON parse error: {e}"),
            FormatError::Text { line, what } => {
                write!(f, "text parse error at line {line}: {what}")
            }
            FormatError::Shape(what) => write!(f, "bad matrix shape: {what}"),
            FormatError::NonFinite => write!(f, "input contains a non-finite entry"),
        }
    }
}

impl From<std::io::Error> for FormatError {
    fn from(e: std::io::Error) -> Self {
        FormatError::Io(e)
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

pub fn matrix_from_file(mf: &MatrixFile) -> Result<ComplexMatrix, FormatError> {
    if mf.rows != mf.cols {
        return Err(FormatError::Shape(format!(
            "matrix must be square, got {}x{}",
            mf.rows, mf.cols
        )));
    }
    if mf.rows == 0 {
        return Err(FormatError::Shape("matrix must be nonempty".into()));
    }
    if mf.data.len() != mf.rows * mf.cols {
        return Err(FormatError::Shape(format!(
            "{}x{} matrix needs {} entries, got {}",
            mf.rows,
            mf.cols,
            mf.rows * mf.cols,
            mf.data.len()
        )));
    }
    let mut data = Vec::with_capacity(mf.data.len());
    for &[re, im] in &mf.data {
        if !re.is_finite() || !im.is_finite() {
            return Err(FormatError::NonFinite);
        }
        data.push(Complex64::new(re, im));
    }
    ComplexMatrix::new(mf.rows, mf.cols, data)
        .map_err(|e| FormatError::Shape(format!("{e}")))
}

pub fn matrix_to_file(a: &ComplexMatrix) -> MatrixFile {
    MatrixFile {
        rows: a.rows(),
        cols: a.cols(),
        data: (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let z = a[(i, j)];
                [z.re, z.im]
            })
            .collect(),
    }
}

fn parse_text(bytes: &[u8]) -> Result<MatrixFile, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|_| FormatError::Text {
        line: 1,
        what: "input is not UTF-8".into(),
    })?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_at, header) = lines.next().ok_or_else(|| FormatError::Text {
        line: 1,
        what: "empty input".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(FormatError::Text {
            line: header_at + 1,
            what: "header must be two dimensions".into(),
        });
    }
    let rows: usize = dims[0].parse().map_err(|_| FormatError::Text {
        line: header_at + 1,
        what: format!("bad row count {:?}", dims[0]),
    })?;
    let cols: usize = dims[1].parse().map_err(|_| FormatError::Text {
        line: header_at + 1,
        what: format!("bad column count {:?}", dims[1]),
    })?;

    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (at, line) = lines.next().ok_or_else(|| FormatError::Text {
            line: header_at + 1,
            what: format!("expected {rows} data rows"),
        })?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 * cols {
            return Err(FormatError::Text {
                line: at + 1,
                what: format!("expected {} numbers, got {}", 2 * cols, fields.len()),
            });
        }
        for pair in fields.chunks(2) {
            let re: f64 = pair[0].parse().map_err(|_| FormatError::Text {
                line: at + 1,
                what: format!("bad number {:?}", pair[0]),
            })?;
            let im: f64 = pair[1].parse().map_err(|_| FormatError::Text {
                line: at + 1,
                what: format!("bad number {:?}", pair[1]),
            })?;
            data.push([re, im]);
        }
    }
    if let Some((at, _)) = lines.next() {
        return Err(FormatError::Text {
            line: at + 1,
            what: "trailing data after the last row".into(),
        });
    }
    Ok(MatrixFile { rows, cols, data })
}

/// Loads a matrix from JSON or plain text, deciding by the first non-blank
/// byte.
pub fn load_matrix(path: &std::path::Path) -> Result<ComplexMatrix, FormatError> {
    let bytes = std::fs::read(path)?;
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    let mf = if first == Some(&b'{') {
        serde_json::from_slice::<MatrixFile>(&bytes)?
    } else {
        parse_text(&bytes)?
    };
    matrix_from_file(&mf)
}

/// Loads a JSON list of vectors: `[{"data": [[re, im], ...]}, ...]`.
pub fn load_vectors(path: &std::path::Path) -> Result<Vec<CVector>, FormatError> {
    let bytes = std::fs::read(path)?;
    let raw: Vec<VectorFile> = serde_json::from_slice(&bytes)?;
    let mut out = Vec::with_capacity(raw.len());
    for v in raw {
        let mut x = Vec::with_capacity(v.data.len());
        for [re, im] in v.data {
            if !re.is_finite() || !im.is_finite() {
                return Err(FormatError::NonFinite);
            }
            x.push(Complex64::new(re, im));
        }
        out.push(x);
    }
    Ok(out)
}
