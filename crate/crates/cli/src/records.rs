//! Output records for sequence tables and their CSV/JSON encodings.

use std::fmt;
use std::io::Write;

use exprcount_core::{BigCount, SequenceRow, SequenceTable};
use serde::{Deserialize, Serialize};

/// One table row with every count as an exact decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub k: usize,
    #[serde(rename = "S")]
    pub s: String,
    #[serde(rename = "Q")]
    pub q: String,
    #[serde(rename = "R")]
    pub r: String,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "A")]
    pub a: String,
}

#[derive(Serialize)]
struct ShortRecord<'a> {
    k: usize,
    #[serde(rename = "A")]
    a: &'a str,
}

/// JSON document: `{"n": N, "rows": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub n: usize,
    pub rows: Vec<OutputRecord>,
}

#[derive(Debug)]
pub struct DecodeError(String);

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot decode table: {}", self.0)
    }
}

impl std::error::Error for DecodeError {}

fn decode_err(e: impl fmt::Display) -> DecodeError {
    DecodeError(e.to_string())
}

impl OutputRecord {
    pub fn from_row(row: &SequenceRow) -> Self {
        OutputRecord {
            k: row.k,
            s: row.s.to_string(),
            q: row.q.to_string(),
            r: row.r.to_string(),
            p: row.p.to_string(),
            a: row.a.to_string(),
        }
    }

    pub fn to_row(&self) -> Result<SequenceRow, DecodeError> {
        let num = |s: &str| {
            s.parse::<BigCount>()
                .map_err(|e| decode_err(format!("k = {}: {e}", self.k)))
        };
        Ok(SequenceRow {
            k: self.k,
            s: num(&self.s)?,
            q: num(&self.q)?,
            r: num(&self.r)?,
            p: num(&self.p)?,
            a: num(&self.a)?,
        })
    }
}

pub fn records(table: &SequenceTable) -> Vec<OutputRecord> {
    table.rows().iter().map(OutputRecord::from_row).collect()
}

/// Aligned text table, right-justified columns.
pub fn write_table<W: Write + ?Sized>(
    table: &SequenceTable,
    all: bool,
    out: &mut W,
) -> std::io::Result<()> {
    let rows: Vec<Vec<String>> = records(table)
        .into_iter()
        .map(|r| {
            if all {
                vec![r.k.to_string(), r.s, r.q, r.r, r.p, r.a]
            } else {
                vec![r.k.to_string(), r.a]
            }
        })
        .collect();
    let header: &[&str] = if all {
        &["k", "S", "Q", "R", "P", "A"]
    } else {
        &["k", "A"]
    };
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in &rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

/// CSV with columns `k,A`, or `k,S,Q,R,P,A` when `all` is set.
pub fn write_csv<W: Write>(table: &SequenceTable, all: bool, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in records(table) {
        if all {
            w.serialize(&r)?;
        } else {
            w.serialize(ShortRecord { k: r.k, a: &r.a })?;
        }
    }
    w.flush()?;
    Ok(())
}

/// JSON document with full rows.
pub fn write_json<W: Write>(table: &SequenceTable, mut out: W) -> serde_json::Result<()> {
    let doc = TableDocument {
        n: table.n(),
        rows: records(table),
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out).map_err(serde_json::Error::io)
}

/// Rebuilds a table from `write_csv(.., true, ..)` output.
pub fn table_from_csv(text: &str) -> Result<SequenceTable, DecodeError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows = reader
        .deserialize::<OutputRecord>()
        .map(|r| r.map_err(decode_err)?.to_row())
        .collect::<Result<Vec<_>, _>>()?;
    SequenceTable::from_rows(rows).map_err(decode_err)
}

/// Reads the `k,A` columns of CSV output.
pub fn a_column_from_csv(text: &str) -> Result<Vec<(usize, BigCount)>, DecodeError> {
    #[derive(Deserialize)]
    struct Row {
        k: usize,
        #[serde(rename = "A")]
        a: String,
    }
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize::<Row>()
        .map(|r| {
            let r = r.map_err(decode_err)?;
            Ok((r.k, r.a.parse::<BigCount>().map_err(decode_err)?))
        })
        .collect()
}

pub fn table_from_json(text: &str) -> Result<SequenceTable, DecodeError> {
    let doc: TableDocument = serde_json::from_str(text).map_err(decode_err)?;
    let rows = doc
        .rows
        .iter()
        .map(OutputRecord::to_row)
        .collect::<Result<Vec<_>, _>>()?;
    let table = SequenceTable::from_rows(rows).map_err(decode_err)?;
    if table.n() != doc.n {
        return Err(DecodeError(format!("n = {} but {} rows", doc.n, table.n())));
    }
    Ok(table)
}
