//! Matrix Market coordinate files, real or complex, general or symmetric.
//!
//! Complex matrices come back split into their real and imaginary parts,
//! which is the `(A, B)` pair of `A + iB`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixMarket<T> {
    Real(CsrMatrix<T>),
    /// Real and imaginary parts.
    Complex(CsrMatrix<T>, CsrMatrix<T>),
}

impl<T: Real> MatrixMarket<T> {
    /// The real part and, for complex files, the imaginary part.
    pub fn into_parts(self) -> (CsrMatrix<T>, Option<CsrMatrix<T>>) {
        match self {
            Self::Real(a) => (a, None),
            Self::Complex(a, b) => (a, Some(b)),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Complex,
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn load_matrix_market<T: Real>(path: impl AsRef<Path>) -> Result<MatrixMarket<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_matrix_market(&text, path)
}

/// Parses file contents; `path` only labels error messages.
pub fn parse_matrix_market<T: Real>(text: &str, path: &Path) -> Result<MatrixMarket<T>> {
    let err = |line: usize, msg: String| Error::Parse {
        path: PathBuf::from(path),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, "empty file, expected %%MatrixMarket header".into()))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(err(hline, format!("malformed header {header:?}")));
    }
    if tokens[2] != "coordinate" {
        return Err(err(
            hline,
            format!("unsupported format {:?}, only coordinate is accepted", tokens[2]),
        ));
    }
    let field = match tokens[3].as_str() {
        "real" | "integer" | "double" => Field::Real,
        "complex" => Field::Complex,
        other => return Err(err(hline, format!("unsupported field {other:?}"))),
    };
    let symmetric = match tokens[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(err(hline, format!("unsupported symmetry {other:?}"))),
    };

    let mut size = None;
    for (ln, line) in lines.by_ref() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(err(ln, format!("expected size line 'rows cols nnz', got {t:?}")));
        }
        let mut nums = [0usize; 3];
        for (slot, p) in nums.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| err(ln, format!("invalid size entry {p:?}")))?;
        }
        size = Some((ln, nums));
        break;
    }
    let (size_line, [rows, cols, nnz]) =
        size.ok_or_else(|| err(hline, "missing size line".into()))?;
    if symmetric && rows != cols {
        return Err(err(size_line, format!("symmetric matrix must be square, got {rows}x{cols}")));
    }

    let width = if field == Field::Complex { 4 } else { 3 };
    let mut re = Vec::with_capacity(nnz * if symmetric { 2 } else { 1 });
    let mut im = Vec::new();
    let mut count = 0usize;
    let mut last_line = size_line;
    for (ln, line) in lines {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        last_line = ln;
        count += 1;
        if count > nnz {
            return Err(err(ln, format!("more entries than the declared {nnz}")));
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != width {
            return Err(err(ln, format!("expected {width} fields, got {}", parts.len())));
        }
        let idx = |p: &str, bound: usize| -> Result<usize> {
            let v: usize = p.parse().map_err(|_| err(ln, format!("invalid index {p:?}")))?;
            if v == 0 || v > bound {
                return Err(err(ln, format!("index {v} out of bounds 1..={bound}")));
            }
            Ok(v - 1)
        };
        let val = |p: &str| -> Result<T> {
            let v: f64 = p.parse().map_err(|_| err(ln, format!("invalid value {p:?}")))?;
            Ok(T::lit(v))
        };
        let i = idx(parts[0], rows)?;
        let j = idx(parts[1], cols)?;
        if symmetric && j > i {
            return Err(err(
                ln,
                format!("symmetric storage expects the lower triangle, got ({}, {})", i + 1, j + 1),
            ));
        }
        let vr = val(parts[2])?;
        re.push((i, j, vr));
        if symmetric && i != j {
            re.push((j, i, vr));
        }
        if field == Field::Complex {
            let vi = val(parts[3])?;
            im.push((i, j, vi));
            if symmetric && i != j {
                im.push((j, i, vi));
            }
        }
    }
    if count != nnz {
        return Err(err(last_line, format!("declared {nnz} entries, found {count}")));
    }
    let a = CsrMatrix::from_triplets(rows, cols, re)?;
    Ok(match field {
        Field::Real => MatrixMarket::Real(a),
        Field::Complex => MatrixMarket::Complex(a, CsrMatrix::from_triplets(rows, cols, im)?),
    })
}

/// Writes a real matrix as `coordinate real general`, every stored entry.
pub fn write_matrix_market<T: Real>(path: impl AsRef<Path>, m: &CsrMatrix<T>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_matrix_market(m)).map_err(|e| io_err(path, e))
}

pub fn format_matrix_market<T: Real>(m: &CsrMatrix<T>) -> String {
    let mut s = String::new();
    s.push_str("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(s, "{} {} {}", m.n_rows(), m.n_cols(), m.nnz());
    for (i, j, v) in m.triplets() {
        let _ = writeln!(s, "{} {} {}", i + 1, j + 1, v);
    }
    s
}

/// Writes `re + i im` as `coordinate complex general` over the union of
/// both patterns.
pub fn write_matrix_market_complex<T: Real>(
    path: impl AsRef<Path>,
    re: &CsrMatrix<T>,
    im: &CsrMatrix<T>,
) -> Result<()> {
    let path = path.as_ref();
    let sum = re.add(im)?;
    let mut s = String::new();
    s.push_str("%%MatrixMarket matrix coordinate complex general\n");
    let _ = writeln!(s, "{} {} {}", sum.n_rows(), sum.n_cols(), sum.nnz());
    for (i, j, _) in sum.triplets() {
        let _ = writeln!(s, "{} {} {} {}", i + 1, j + 1, re.get(i, j), im.get(i, j));
    }
    fs::write(path, s).map_err(|e| io_err(path, e))
}

/// Reads a vector from plain text: one entry per line, `re` or `re im`.
/// Blank lines and lines starting with `%` or `#` are skipped.
pub fn load_vector<T: Real>(path: impl AsRef<Path>) -> Result<Vec<Complex<T>>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') || t.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: k + 1,
            msg,
        };
        let parts: Vec<&str> = t.split_whitespace().collect();
        let num = |p: &str| -> Result<T> {
            p.parse::<f64>()
                .map(T::lit)
                .map_err(|_| err(format!("invalid value {p:?}")))
        };
        let z = match parts.as_slice() {
            [r] => Complex::new(num(r)?, T::zero()),
            [r, i] => Complex::new(num(r)?, num(i)?),
            _ => return Err(err(format!("expected 1 or 2 fields, got {}", parts.len()))),
        };
        out.push(z);
    }
    Ok(out)
}
