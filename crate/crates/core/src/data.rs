//! Observation data: binary matrices, encodings, and 2x2 contingency
//! tables.
//!
//! Index convention used throughout: in a cell `n_ij` the first index is
//! the value of variable A and the second the value of B, so `n01` counts
//! instances with A absent and B present.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A named categorical variable: one label per instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoricalColumn {
    pub name: String,
    pub values: Vec<String>,
}

impl CategoricalColumn {
    pub fn new(name: impl Into<String>, values: Vec<String>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }
}

/// A named binary variable. `None` marks a missing observation; rows with
/// a missing cell are dropped pair-locally when counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryColumn {
    pub name: String,
    pub values: Vec<Option<bool>>,
}

impl BinaryColumn {
    pub fn new(name: impl Into<String>, values: Vec<Option<bool>>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }

    pub fn from_bits(name: impl Into<String>, bits: &[u8]) -> Self {
        Self {
            name: name.into(),
            values: bits.iter().map(|&b| Some(b != 0)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every observed value is identical (or nothing is
    /// observed); such a column carries no pairwise information.
    pub fn is_degenerate(&self) -> bool {
        let mut seen = [false, false];
        for v in self.values.iter().flatten() {
            seen[*v as usize] = true;
        }
        !(seen[0] && seen[1])
    }
}

/// N instances by k binary variables, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    names: Vec<String>,
    cells: Vec<Option<bool>>,
    rows: usize,
}

impl BinaryMatrix {
    /// Assemble a matrix from equally long, uniquely named columns.
    pub fn from_columns(columns: Vec<BinaryColumn>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::DataShape("matrix needs at least one column".into()));
        }
        let rows = columns[0].len();
        if rows == 0 {
            return Err(Error::DataShape("matrix needs at least one row".into()));
        }
        let mut names = Vec::with_capacity(columns.len());
        for col in &columns {
            if col.len() != rows {
                return Err(Error::DataShape(format!(
                    "column '{}' has {} rows, expected {}",
                    col.name,
                    col.len(),
                    rows
                )));
            }
            if names.contains(&col.name) {
                return Err(Error::DataShape(format!(
                    "duplicate variable name '{}'",
                    col.name
                )));
            }
            names.push(col.name.clone());
        }
        let k = columns.len();
        let mut cells = vec![None; rows * k];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.values.iter().enumerate() {
                cells[i * k + j] = *v;
            }
        }
        Ok(Self { names, cells, rows })
    }

    /// Build from rows of cells; `names` supplies the column labels.
    pub fn from_rows(names: Vec<String>, rows: Vec<Vec<Option<bool>>>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::DataShape("matrix needs at least one column".into()));
        }
        if rows.is_empty() {
            return Err(Error::DataShape("matrix needs at least one row".into()));
        }
        for (j, name) in names.iter().enumerate() {
            if names[..j].contains(name) {
                return Err(Error::DataShape(format!("duplicate variable name '{name}'")));
            }
        }
        let k = names.len();
        let mut cells = Vec::with_capacity(rows.len() * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::DataShape(format!(
                    "row {} has {} cells, expected {}",
                    i + 1,
                    row.len(),
                    k
                )));
            }
            cells.extend_from_slice(row);
        }
        let n_rows = cells.len() / k;
        Ok(Self {
            names,
            cells,
            rows: n_rows,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_vars(&self) -> usize {
        self.names.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, row: usize, col: usize) -> Option<bool> {
        self.cells[row * self.names.len() + col]
    }

    pub fn column_index(&self, label: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == label)
            .ok_or_else(|| Error::UnknownVariable(label.to_string()))
    }

    /// Extract one variable as a column.
    pub fn column(&self, label: &str) -> Result<BinaryColumn> {
        let j = self.column_index(label)?;
        let k = self.names.len();
        Ok(BinaryColumn {
            name: label.to_string(),
            values: (0..self.rows).map(|i| self.cells[i * k + j]).collect(),
        })
    }

    /// Append a column, e.g. a conjoined item set.
    pub fn push_column(&mut self, col: BinaryColumn) -> Result<()> {
        if col.len() != self.rows {
            return Err(Error::DataShape(format!(
                "column '{}' has {} rows, expected {}",
                col.name,
                col.len(),
                self.rows
            )));
        }
        if self.names.contains(&col.name) {
            return Err(Error::DataShape(format!(
                "duplicate variable name '{}'",
                col.name
            )));
        }
        let k = self.names.len();
        let mut cells = Vec::with_capacity(self.rows * (k + 1));
        for i in 0..self.rows {
            cells.extend_from_slice(&self.cells[i * k..(i + 1) * k]);
            cells.push(col.values[i]);
        }
        self.names.push(col.name);
        self.cells = cells;
        Ok(())
    }
}

/// The four co-occurrence counts for an ordered pair (A, B).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    pub label_a: String,
    pub label_b: String,
    pub n00: u64,
    pub n01: u64,
    pub n10: u64,
    pub n11: u64,
}

impl ContingencyTable {
    pub fn new(
        label_a: impl Into<String>,
        label_b: impl Into<String>,
        n00: u64,
        n01: u64,
        n10: u64,
        n11: u64,
    ) -> Self {
        Self {
            label_a: label_a.into(),
            label_b: label_b.into(),
            n00,
            n01,
            n10,
            n11,
        }
    }

    /// Total number of (retained) instances.
    pub fn total(&self) -> u64 {
        self.n00 + self.n01 + self.n10 + self.n11
    }

    /// Count of instances with A present.
    pub fn margin_a(&self) -> u64 {
        self.n10 + self.n11
    }

    /// Count of instances with B present.
    pub fn margin_b(&self) -> u64 {
        self.n01 + self.n11
    }

    /// A margin is degenerate when the variable never varies in the
    /// retained rows.
    pub fn degenerate_a(&self) -> bool {
        self.margin_a() == 0 || self.margin_a() == self.total()
    }

    pub fn degenerate_b(&self) -> bool {
        self.margin_b() == 0 || self.margin_b() == self.total()
    }

    /// Either variable is constant; downstream results should carry a
    /// warning flag.
    pub fn degenerate(&self) -> bool {
        self.degenerate_a() || self.degenerate_b()
    }

    /// The same counts for the ordered pair (B, A): swaps `n01` and `n10`.
    pub fn transposed(&self) -> Self {
        Self {
            label_a: self.label_b.clone(),
            label_b: self.label_a.clone(),
            n00: self.n00,
            n01: self.n10,
            n10: self.n01,
            n11: self.n11,
        }
    }
}

/// One-hot encode a categorical column into one binary variable per
/// distinct category, in sorted label order.
pub fn one_hot_encode(column: &CategoricalColumn) -> Result<BinaryMatrix> {
    if column.values.is_empty() {
        return Err(Error::DataShape(format!(
            "column '{}' is empty, nothing to encode",
            column.name
        )));
    }
    // BTreeMap gives the sorted category order directly.
    let mut categories: BTreeMap<&str, usize> = BTreeMap::new();
    for v in &column.values {
        let next = categories.len();
        categories.entry(v.as_str()).or_insert(next);
    }
    let names: Vec<String> = categories.keys().map(|s| s.to_string()).collect();
    let index_of: BTreeMap<&str, usize> = categories
        .keys()
        .enumerate()
        .map(|(i, s)| (*s, i))
        .collect();
    let k = names.len();
    let mut rows = Vec::with_capacity(column.values.len());
    for v in &column.values {
        let mut row = vec![Some(false); k];
        row[index_of[v.as_str()]] = Some(true);
        rows.push(row);
    }
    BinaryMatrix::from_rows(names, rows)
}

/// Elementwise logical AND of two binary columns; represents the item
/// set containing both items. Missing cells propagate.
pub fn conjoin(a: &BinaryColumn, b: &BinaryColumn) -> Result<BinaryColumn> {
    if a.len() != b.len() {
        return Err(Error::DataShape(format!(
            "length mismatch: '{}' has {} rows, '{}' has {}",
            a.name,
            a.len(),
            b.name,
            b.len()
        )));
    }
    let values = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| match (x, y) {
            (Some(x), Some(y)) => Some(*x && *y),
            _ => None,
        })
        .collect();
    Ok(BinaryColumn {
        name: format!("({}&{})", a.name, b.name),
        values,
    })
}

/// Reduce a variable pair to its 2x2 contingency table. Rows with a
/// missing cell in either variable are dropped for this pair only.
pub fn contingency(matrix: &BinaryMatrix, a: &str, b: &str) -> Result<ContingencyTable> {
    let ja = matrix.column_index(a)?;
    let jb = matrix.column_index(b)?;
    let mut counts = [0u64; 4];
    for i in 0..matrix.n_rows() {
        if let (Some(va), Some(vb)) = (matrix.get(i, ja), matrix.get(i, jb)) {
            counts[(va as usize) * 2 + vb as usize] += 1;
        }
    }
    Ok(ContingencyTable {
        label_a: a.to_string(),
        label_b: b.to_string(),
        n00: counts[0],
        n01: counts[1],
        n10: counts[2],
        n11: counts[3],
    })
}
