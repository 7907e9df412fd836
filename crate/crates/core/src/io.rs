//! CSV datasets: header `dmu,x1,...,xm,y1,...,yp`, one row per DMU.

use std::io::{Read, Write};
use std::path::Path;

use crate::data::{Dataset, Dmu};
use crate::error::{Error, Result};
use crate::rational::{compact_string, is_integral, parse_rational};

/// Cell requirements applied while loading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CellKind {
    /// Integers, fractions `a/b` and terminating decimals.
    #[default]
    Real,
    /// Integers only; anything else is a load error naming the cell.
    Integer,
}

fn load_error(row: usize, column: &str, message: impl Into<String>) -> Error {
    Error::Load {
        row,
        column: column.to_string(),
        message: message.into(),
    }
}

/// Parses a dataset. Row numbers in errors are 1-based file lines
/// (the header is row 1).
pub fn read_dataset<R: Read>(reader: R, kind: CellKind) -> Result<Dataset> {
    let mut csv = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = csv
        .headers()
        .map_err(|e| load_error(1, "-", e.to_string()))?
        .clone();
    let columns: Vec<String> = header.iter().map(str::to_string).collect();
    if columns.first().map(String::as_str) != Some("dmu") {
        return Err(load_error(1, columns.first().map_or("-", String::as_str), "first column must be `dmu`"));
    }

    let mut m = 0;
    let mut p = 0;
    for column in &columns[1..] {
        let expected_x = format!("x{}", m + 1);
        let expected_y = format!("y{}", p + 1);
        if p == 0 && *column == expected_x {
            m += 1;
        } else if *column == expected_y {
            p += 1;
        } else {
            return Err(load_error(
                1,
                column,
                format!("unexpected header; wanted `{expected_x}` or `{expected_y}`"),
            ));
        }
    }
    if m == 0 || p == 0 {
        return Err(load_error(1, "-", "header needs at least one x and one y column"));
    }

    let mut dmus = Vec::new();
    for (i, record) in csv.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| load_error(row, "-", e.to_string()))?;
        if record.len() != columns.len() {
            return Err(load_error(
                row,
                "-",
                format!("expected {} cells, found {}", columns.len(), record.len()),
            ));
        }
        let name = record[0].to_string();
        if name.is_empty() {
            return Err(load_error(row, "dmu", "empty DMU name"));
        }
        let mut values = Vec::with_capacity(m + p);
        for (column, cell) in columns[1..].iter().zip(record.iter().skip(1)) {
            let value = parse_rational(cell)
                .ok_or_else(|| load_error(row, column, format!("`{cell}` is not a number")))?;
            if kind == CellKind::Integer && !is_integral(&value) {
                return Err(load_error(
                    row,
                    column,
                    format!("`{cell}` is not an integer (integer model requested)"),
                ));
            }
            values.push(value);
        }
        let outputs = values.split_off(m);
        dmus.push(Dmu::new(name, values, outputs));
    }
    if dmus.is_empty() {
        return Err(load_error(2, "-", "dataset has no rows"));
    }
    Dataset::new(dmus)
}

pub fn load_dataset(path: impl AsRef<Path>, kind: CellKind) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)
        .map_err(|e| load_error(0, "-", format!("{}: {e}", path.display())))?;
    read_dataset(file, kind)
}

pub fn write_dataset<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| load_error(0, "-", e.to_string());
    let mut header = vec!["dmu".to_string()];
    header.extend((1..=data.input_count()).map(|k| format!("x{k}")));
    header.extend((1..=data.output_count()).map(|r| format!("y{r}")));
    csv.write_record(&header).map_err(io)?;
    for dmu in data.dmus() {
        let mut row = vec![dmu.name.clone()];
        row.extend(dmu.inputs.iter().chain(&dmu.outputs).map(compact_string));
        csv.write_record(&row).map_err(io)?;
    }
    csv.flush().map_err(|e| load_error(0, "-", e.to_string()))?;
    Ok(())
}
