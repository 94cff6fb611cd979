//! Historical database loading.
//!
//! The database is a directory holding `aircraft.csv` and `engines.csv`.
//! Headers are snake_case column names carrying a unit suffix (`mtow_kg`),
//! cells are UTF-8 numbers, and an empty cell means missing. Rows missing
//! their key column are dropped with a warning; out-of-range values are hard
//! errors naming the row.

use std::path::Path;

use fastsize_core::regression::{ColumnMeta, HistoricalDatabase, Table};

#[derive(Debug, thiserror::Error)]
pub enum DbError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: malformed CSV: {message}")]
    Malformed { path: String, message: String },
    #[error("{path}: unknown column '{column}'")]
    UnknownColumn { path: String, column: String },
    #[error("{path} row {row}: non-numeric value '{value}' in column '{column}'")]
    NonNumeric {
        path: String,
        row: usize,
        column: String,
        value: String,
    },
    #[error("{path} row {row}: {column} must be non-negative, got {value}")]
    NegativeValue {
        path: String,
        row: usize,
        column: String,
        value: f64,
    },
    #[error("{path}: no records")]
    Empty { path: String },
}

struct ColumnSchema {
    name: &'static str,
    description: &'static str,
    /// Negative values rejected (masses, thrusts, powers).
    non_negative: bool,
}

struct TableSchema {
    file: &'static str,
    /// A row must have at least one of these to be kept.
    key_columns: &'static [&'static str],
    columns: &'static [ColumnSchema],
}

const AIRCRAFT_SCHEMA: TableSchema = TableSchema {
    file: "aircraft.csv",
    key_columns: &["mtow_kg"],
    columns: &[
        ColumnSchema {
            name: "mtow_kg",
            description: "maximum takeoff mass",
            non_negative: true,
        },
        ColumnSchema {
            name: "empty_mass_kg",
            description: "operating empty mass",
            non_negative: true,
        },
        ColumnSchema {
            name: "payload_kg",
            description: "maximum structural payload",
            non_negative: true,
        },
        ColumnSchema {
            name: "range_m",
            description: "range at typical payload",
            non_negative: true,
        },
        ColumnSchema {
            name: "wing_area_m2",
            description: "wing reference area",
            non_negative: true,
        },
        ColumnSchema {
            name: "cruise_speed_ms",
            description: "typical cruise true airspeed",
            non_negative: true,
        },
    ],
};

const ENGINE_SCHEMA: TableSchema = TableSchema {
    file: "engines.csv",
    key_columns: &["rated_power_w", "rated_thrust_n"],
    columns: &[
        ColumnSchema {
            name: "rated_power_w",
            description: "takeoff-rated shaft power (turboprops/turboshafts)",
            non_negative: true,
        },
        ColumnSchema {
            name: "rated_thrust_n",
            description: "takeoff-rated static thrust (turbofans)",
            non_negative: true,
        },
        ColumnSchema {
            name: "dry_mass_kg",
            description: "dry mass",
            non_negative: true,
        },
    ],
};

/// Unit suffix split out of a snake_case column name (`mtow_kg` -> `kg`).
fn unit_suffix(name: &str) -> String {
    name.rsplit('_').next().unwrap_or("").to_string()
}

fn load_table(text: &str, path: &str, schema: &TableSchema) -> Result<(Table, usize), DbError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|error| DbError::Malformed {
            path: path.to_string(),
            message: error.to_string(),
        })?
        .clone();

    // `name` is an optional textual label column; everything else must be a
    // known numeric column.
    let mut name_column = None;
    let mut numeric: Vec<(usize, &ColumnSchema)> = Vec::new();
    for (index, header) in headers.iter().enumerate() {
        if header == "name" {
            name_column = Some(index);
            continue;
        }
        match schema.columns.iter().find(|column| column.name == header) {
            Some(column) => numeric.push((index, column)),
            None => {
                return Err(DbError::UnknownColumn {
                    path: path.to_string(),
                    column: header.to_string(),
                })
            }
        }
    }
    let _ = name_column;

    let columns: Vec<ColumnMeta> = numeric
        .iter()
        .map(|(_, column)| ColumnMeta {
            name: column.name.to_string(),
            unit: unit_suffix(column.name),
            description: column.description.to_string(),
        })
        .collect();

    let mut rows: Vec<Vec<Option<f64>>> = Vec::new();
    let mut dropped = 0usize;
    for (row_number, record) in reader.records().enumerate() {
        let record = record.map_err(|error| DbError::Malformed {
            path: path.to_string(),
            message: error.to_string(),
        })?;
        let display_row = row_number + 2; // header is line 1
        let mut row = Vec::with_capacity(numeric.len());
        for (index, column) in &numeric {
            let cell = record.get(*index).unwrap_or("");
            if cell.is_empty() {
                row.push(None);
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| DbError::NonNumeric {
                path: path.to_string(),
                row: display_row,
                column: column.name.to_string(),
                value: cell.to_string(),
            })?;
            if column.non_negative && value < 0.0 {
                return Err(DbError::NegativeValue {
                    path: path.to_string(),
                    row: display_row,
                    column: column.name.to_string(),
                    value,
                });
            }
            row.push(Some(value));
        }

        let has_key = schema.key_columns.iter().any(|key| {
            numeric
                .iter()
                .position(|(_, column)| column.name == *key)
                .and_then(|position| row[position])
                .is_some()
        });
        if has_key {
            rows.push(row);
        } else {
            dropped += 1;
        }
    }

    if rows.is_empty() {
        return Err(DbError::Empty {
            path: path.to_string(),
        });
    }

    Ok((
        Table {
            name: schema.file.trim_end_matches(".csv").to_string(),
            columns,
            rows,
        },
        dropped,
    ))
}

/// Load `aircraft.csv` and `engines.csv` from a directory. Returns the
/// database plus human-readable warnings (dropped-row counts).
pub fn load_database(dir: &Path) -> Result<(HistoricalDatabase, Vec<String>), DbError> {
    let mut warnings = Vec::new();
    let mut load = |schema: &TableSchema| -> Result<Table, DbError> {
        let path = dir.join(schema.file);
        let text = std::fs::read_to_string(&path).map_err(|source| DbError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let (table, dropped) = load_table(&text, &path.display().to_string(), schema)?;
        if dropped > 0 {
            warnings.push(format!(
                "{}: dropped {dropped} row(s) missing the key column",
                path.display()
            ));
        }
        Ok(table)
    };
    let aircraft = load(&AIRCRAFT_SCHEMA)?;
    let engines = load(&ENGINE_SCHEMA)?;
    Ok((HistoricalDatabase { aircraft, engines }, warnings))
}

/// Load the database from in-memory CSV text (the bundled copy).
pub fn load_database_from_strings(
    aircraft_csv: &str,
    engines_csv: &str,
) -> Result<(HistoricalDatabase, Vec<String>), DbError> {
    let mut warnings = Vec::new();
    let (aircraft, dropped_aircraft) =
        load_table(aircraft_csv, "<bundled>/aircraft.csv", &AIRCRAFT_SCHEMA)?;
    if dropped_aircraft > 0 {
        warnings.push(format!(
            "bundled aircraft.csv: dropped {dropped_aircraft} row(s) missing the key column"
        ));
    }
    let (engines, dropped_engines) =
        load_table(engines_csv, "<bundled>/engines.csv", &ENGINE_SCHEMA)?;
    if dropped_engines > 0 {
        warnings.push(format!(
            "bundled engines.csv: dropped {dropped_engines} row(s) missing the key column"
        ));
    }
    Ok((HistoricalDatabase { aircraft, engines }, warnings))
}
