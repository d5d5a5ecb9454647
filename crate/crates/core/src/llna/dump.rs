//! Plain-text and graymap dumps of evolution patterns.
//!
//! Text matrices start with a `rows cols` line followed by one
//! space-separated line per row. Graymaps are binary PGM (`P5`, maxval 255)
//! with time running down and nodes across.

use std::fmt::{Display, Write as _};

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};

/// How pattern values map onto gray levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrayScale {
    /// Values in `[0, 1]` scaled by 255 (TEP, D-TEP).
    Unit,
    /// Values in `[-1, 1]` mapped through `(v + 1) / 2` first (SD-TEP).
    Signed,
}

impl GrayScale {
    pub fn gray(self, v: f64) -> u8 {
        let u = match self {
            GrayScale::Unit => v,
            GrayScale::Signed => (v + 1.0) / 2.0,
        };
        (u.clamp(0.0, 1.0) * 255.0).round() as u8
    }
}

pub fn to_text_matrix<T: Display>(matrix: ArrayView2<T>) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", matrix.nrows(), matrix.ncols()).unwrap();
    for row in matrix.rows() {
        let mut first = true;
        for v in row {
            if !first {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn parse_text_matrix(text: &str) -> Result<Array2<f64>> {
    let mut lines = text.lines().enumerate();
    let (rows, cols) = match lines.next() {
        Some((_, header)) => {
            let dims: Vec<usize> = header
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("bad header `{header}`"),
                })?;
            match dims[..] {
                [r, c] => (r, c),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        message: "header must be `rows cols`".into(),
                    })
                }
            }
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty matrix file".into(),
            })
        }
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("bad value `{tok}`"),
            })?;
            data.push(v);
        }
        if data.len() - before != cols {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected {cols} values, found {}", data.len() - before),
            });
        }
        seen += 1;
    }
    if seen != rows {
        return Err(Error::Parse {
            line: seen + 1,
            message: format!("expected {rows} rows, found {seen}"),
        });
    }
    Ok(Array2::from_shape_vec((rows, cols), data).expect("shape checked"))
}

/// Encodes a pattern as a binary PGM. `column_order`, when given, lists the
/// source column for each output column.
pub fn to_pgm<T: Copy + Into<f64>>(
    matrix: ArrayView2<T>,
    scale: GrayScale,
    column_order: Option<&[usize]>,
) -> Vec<u8> {
    let (rows, cols) = matrix.dim();
    let identity: Vec<usize>;
    let order = match column_order {
        Some(o) => {
            assert_eq!(
                o.len(),
                cols,
                "column order must be a permutation of the columns"
            );
            o
        }
        None => {
            identity = (0..cols).collect();
            &identity
        }
    };
    let mut out = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    out.reserve(rows * cols);
    for row in matrix.rows() {
        out.extend(order.iter().map(|&c| scale.gray(row[c].into())));
    }
    out
}
