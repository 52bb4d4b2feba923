use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::response::{LikertScale, ResponseMatrix};

/// Responses read from a survey CSV plus the number of incomplete rows dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedSurvey {
    pub responses: ResponseMatrix,
    pub rows_dropped: usize,
}

pub fn load_csv(path: &Path, scale: LikertScale) -> Result<LoadedSurvey> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_csv(file, scale)
}

/// Header row of item identifiers, one respondent per row. Rows with any empty
/// cell are dropped (listwise deletion).
pub fn read_csv<R: Read>(reader: R, scale: LikertScale) -> Result<LoadedSurvey> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let items: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let mut seen = HashSet::new();
    for item in &items {
        if !seen.insert(item.as_str()) {
            return Err(Error::CsvDuplicateItem { item: item.clone() });
        }
    }

    let mut rows = Vec::new();
    let mut dropped = 0;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().any(str::is_empty) {
            dropped += 1;
            continue;
        }
        let row = record
            .iter()
            .zip(&items)
            .map(|(cell, item)| {
                let value: i64 = cell.parse().map_err(|_| Error::CsvNotInteger {
                    line,
                    item: item.clone(),
                    cell: cell.to_string(),
                })?;
                if !scale.contains(value) {
                    return Err(Error::CsvOutOfRange {
                        line,
                        item: item.clone(),
                        value,
                        min: scale.min,
                        max: scale.max,
                    });
                }
                Ok(value)
            })
            .collect::<Result<Vec<i64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::CsvNoRows { dropped });
    }
    Ok(LoadedSurvey {
        responses: ResponseMatrix::new(items, rows, scale)?,
        rows_dropped: dropped,
    })
}

pub fn write_csv<W: Write>(responses: &ResponseMatrix, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(responses.items())?;
    for r in 0..responses.n_respondents() {
        w.write_record(responses.row(r).iter().map(i64::to_string))?;
    }
    w.flush().map_err(|source| Error::Io {
        path: "<csv output>".into(),
        source,
    })?;
    Ok(())
}

pub fn save_csv(responses: &ResponseMatrix, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    write_csv(responses, file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str) -> Result<LoadedSurvey> {
        read_csv(text.as_bytes(), LikertScale::default())
    }

    #[test]
    fn blank_cell_drops_row() {
        let s = read("a,b,c\n1,2,3\n4,,5\n5,4,3\n").unwrap();
        assert_eq!(s.responses.n_respondents(), 2);
        assert_eq!(s.rows_dropped, 1);
        assert_eq!(s.responses.row(1), &[5, 4, 3]);
    }

    #[test]
    fn duplicate_header() {
        assert!(matches!(
            read("item5,item1,item5\n1,2,3\n"),
            Err(Error::CsvDuplicateItem { ref item }) if item == "item5"
        ));
    }

    #[test]
    fn non_integer_reports_line() {
        match read("a,b\n1,2\n3,x\n") {
            Err(Error::CsvNotInteger { line, item, .. }) => assert_eq!((line, item.as_str()), (3, "b")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(read("a,b\n1,2.5\n"), Err(Error::CsvNotInteger { .. })));
    }

    #[test]
    fn out_of_range_reports_line() {
        match read("a,b\n1,2\n3,4\n6,1\n") {
            Err(Error::CsvOutOfRange { line, value, .. }) => assert_eq!((line, value), (4, 6)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn no_usable_rows() {
        assert!(matches!(read("a,b\n1,\n"), Err(Error::CsvNoRows { dropped: 1 })));
        assert!(matches!(read("a,b\n"), Err(Error::CsvNoRows { dropped: 0 })));
    }

    #[test]
    fn ragged_row_is_an_error() {
        assert!(read("a,b\n1,2,3\n").is_err());
    }
}
