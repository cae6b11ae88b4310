//! CSV schemas for observation data.
//!
//! Instances format: the first row names the variables; every cell is
//! `0`, `1`, or empty (missing). Contingency format: header
//! `n00,n01,n10,n11` and exactly one data row of non-negative counts;
//! the pair is labelled A (first index) and B (second index). Lines
//! starting with `#` are comments in both formats.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use deltap_core::{BinaryMatrix, ContingencyTable};

use crate::error::{CliError, Result};

/// Input schema selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Instances,
    Contingency,
}

/// Either parsed input shape.
#[derive(Debug, Clone)]
pub enum Ingested {
    Instances(BinaryMatrix),
    Contingency(ContingencyTable),
}

pub fn ingest(path: &Path, format: InputFormat) -> Result<Ingested> {
    match format {
        InputFormat::Instances => read_instances(path).map(Ingested::Instances),
        InputFormat::Contingency => read_contingency(path).map(Ingested::Contingency),
    }
}

fn reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(file))
}

fn parse_err(path: &Path, row: Option<usize>, col: Option<&str>, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        row,
        col: col.map(|c| c.to_string()),
        message: message.into(),
    }
}

/// Read the instances schema into a binary matrix.
pub fn read_instances(path: &Path) -> Result<BinaryMatrix> {
    let mut rdr = reader(path)?;
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(path, None, None, e.to_string()))?
        .clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(parse_err(path, None, None, "empty file: no header row"));
    }
    let names: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    for (j, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(parse_err(path, Some(1), None, format!("variable {} has an empty name", j + 1)));
        }
        if names[..j].contains(name) {
            return Err(parse_err(
                path,
                Some(1),
                Some(name),
                "duplicate variable name",
            ));
        }
    }
    let mut rows: Vec<Vec<Option<bool>>> = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| parse_err(path, Some(i + 2), None, e.to_string()))?;
        if record.len() != names.len() {
            return Err(parse_err(
                path,
                Some(i + 2),
                None,
                format!("expected {} cells, found {}", names.len(), record.len()),
            ));
        }
        let mut row = Vec::with_capacity(names.len());
        for (j, cell) in record.iter().enumerate() {
            row.push(match cell {
                "0" => Some(false),
                "1" => Some(true),
                "" => None,
                other => {
                    return Err(parse_err(
                        path,
                        Some(i + 2),
                        Some(&names[j]),
                        format!("cell must be 0, 1, or empty, got '{other}'"),
                    ))
                }
            });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(path, None, None, "no data rows"));
    }
    BinaryMatrix::from_rows(names, rows).map_err(|e| parse_err(path, None, None, e.to_string()))
}

/// Read the contingency schema; the pair is labelled A and B.
pub fn read_contingency(path: &Path) -> Result<ContingencyTable> {
    let mut rdr = reader(path)?;
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(path, None, None, e.to_string()))?
        .clone();
    let expected = ["n00", "n01", "n10", "n11"];
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(parse_err(path, None, None, "empty file: no header row"));
    }
    if headers.len() != 4 || headers.iter().zip(expected).any(|(h, e)| h != e) {
        return Err(parse_err(
            path,
            Some(1),
            None,
            format!("header must be exactly '{}'", expected.join(",")),
        ));
    }
    let mut counts: Option<[u64; 4]> = None;
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| parse_err(path, Some(i + 2), None, e.to_string()))?;
        if counts.is_some() {
            return Err(parse_err(path, Some(i + 2), None, "expected exactly one data row"));
        }
        if record.len() != 4 {
            return Err(parse_err(
                path,
                Some(i + 2),
                None,
                format!("expected 4 cells, found {}", record.len()),
            ));
        }
        let mut c = [0u64; 4];
        for (j, cell) in record.iter().enumerate() {
            c[j] = cell.parse().map_err(|_| {
                parse_err(
                    path,
                    Some(i + 2),
                    Some(expected[j]),
                    format!("count must be a non-negative integer, got '{cell}'"),
                )
            })?;
        }
        counts = Some(c);
    }
    let c = counts.ok_or_else(|| parse_err(path, None, None, "no data row"))?;
    Ok(ContingencyTable::new("A", "B", c[0], c[1], c[2], c[3]))
}

/// Write a matrix in the instances schema; missing cells become empty.
pub fn write_instances(path: &Path, matrix: &BinaryMatrix, run_id: Option<&str>) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    if let Some(id) = run_id {
        writeln!(w, "# run_id: {id}").map_err(|e| CliError::io(path, e))?;
    }
    writeln!(w, "{}", matrix.variable_names().join(",")).map_err(|e| CliError::io(path, e))?;
    for i in 0..matrix.n_rows() {
        let cells: Vec<&str> = (0..matrix.n_vars())
            .map(|j| match matrix.get(i, j) {
                Some(true) => "1",
                Some(false) => "0",
                None => "",
            })
            .collect();
        writeln!(w, "{}", cells.join(",")).map_err(|e| CliError::io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Write a table in the contingency schema.
pub fn write_contingency(path: &Path, table: &ContingencyTable, run_id: Option<&str>) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    if let Some(id) = run_id {
        writeln!(w, "# run_id: {id}").map_err(|e| CliError::io(path, e))?;
    }
    writeln!(
        w,
        "# A = {}, B = {}; first index is A's value",
        table.label_a, table.label_b
    )
    .map_err(|e| CliError::io(path, e))?;
    writeln!(w, "n00,n01,n10,n11").map_err(|e| CliError::io(path, e))?;
    writeln!(w, "{},{},{},{}", table.n00, table.n01, table.n10, table.n11)
        .map_err(|e| CliError::io(path, e))?;
    w.flush().map_err(|e| CliError::io(path, e))
}

/// SHA-256 of a file's bytes, hex encoded.
pub fn file_sha256(path: &Path) -> Result<String> {
    use sha2::{Digest, Sha256};
    let mut file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 8192];
    loop {
        let n = file.read(&mut buf).map_err(|e| CliError::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex(&hasher.finalize()))
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
