//! Reading integer series from files or stdin.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Which column of a CSV file to read: 1-indexed position or header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl std::str::FromStr for Column {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.parse::<usize>() {
            Ok(0) => Err("columns are numbered from 1".into()),
            Ok(i) => Ok(Column::Index(i)),
            Err(_) if !s.is_empty() => Ok(Column::Name(s.to_string())),
            Err(_) => Err("empty column name".into()),
        }
    }
}

/// A series source: whitespace-separated integers, or one CSV column.
#[derive(Debug, Clone)]
pub struct SeriesFile {
    pub path: PathBuf,
    pub column: Option<Column>,
}

impl SeriesFile {
    pub fn new(path: impl Into<PathBuf>, column: Option<Column>) -> Self {
        SeriesFile {
            path: path.into(),
            column,
        }
    }

    fn open(&self) -> Result<Box<dyn BufRead>, CliError> {
        if self.path == Path::new("-") {
            return Ok(Box::new(BufReader::new(io::stdin())));
        }
        let file = File::open(&self.path).map_err(|e| CliError::io(&self.path, e))?;
        Ok(Box::new(BufReader::new(file)))
    }

    /// Streams values one at a time, never holding more than a line.
    pub fn values(&self) -> Result<Box<dyn Iterator<Item = Result<i64, CliError>>>, CliError> {
        let reader = self.open()?;
        Ok(match &self.column {
            None => Box::new(WhitespaceValues::new(self.path.clone(), reader)),
            Some(col) => Box::new(CsvValues::new(self.path.clone(), reader, col.clone())?),
        })
    }

    pub fn read_all(&self) -> Result<Vec<i64>, CliError> {
        self.values()?.collect()
    }
}

fn parse_cell(path: &Path, line: u64, column: u64, token: &str) -> Result<i64, CliError> {
    token.trim().parse::<i64>().map_err(|_| CliError::Parse {
        path: path.to_path_buf(),
        line,
        column,
        token: token.to_string(),
    })
}

struct WhitespaceValues {
    path: PathBuf,
    reader: Box<dyn BufRead>,
    line: String,
    line_no: u64,
    pending: std::vec::IntoIter<(u64, String)>,
    failed: bool,
}

impl WhitespaceValues {
    fn new(path: PathBuf, reader: Box<dyn BufRead>) -> Self {
        WhitespaceValues {
            path,
            reader,
            line: String::new(),
            line_no: 0,
            pending: Vec::new().into_iter(),
            failed: false,
        }
    }
}

impl Iterator for WhitespaceValues {
    type Item = Result<i64, CliError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            if let Some((column, token)) = self.pending.next() {
                let v = parse_cell(&self.path, self.line_no, column, &token);
                self.failed = v.is_err();
                return Some(v);
            }
            self.line.clear();
            match self.reader.read_line(&mut self.line) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => {
                    self.failed = true;
                    return Some(Err(CliError::io(&self.path, e)));
                }
            }
            self.line_no += 1;
            let tokens: Vec<(u64, String)> = tokens_with_columns(&self.line)
                .map(|(column, token)| (column, token.to_string()))
                .collect();
            self.pending = tokens.into_iter();
        }
    }
}

struct CsvValues {
    path: PathBuf,
    records: csv::StringRecordsIntoIter<Box<dyn BufRead>>,
    index: usize,
    failed: bool,
}

impl CsvValues {
    fn new(path: PathBuf, reader: Box<dyn BufRead>, column: Column) -> Result<Self, CliError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(matches!(column, Column::Name(_)))
            .flexible(true)
            .from_reader(reader);
        let index = match column {
            Column::Index(i) => i - 1,
            Column::Name(name) => {
                let headers = rdr.headers().map_err(|e| csv_error(&path, e))?;
                headers
                    .iter()
                    .position(|h| h.trim() == name)
                    .ok_or_else(|| CliError::Usage(format!("{}: no column named {name:?}", path.display())))?
            }
        };
        Ok(CsvValues {
            path,
            records: rdr.into_records(),
            index,
            failed: false,
        })
    }
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => CliError::io(path, e),
        other => CliError::Csv {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    }
}

impl Iterator for CsvValues {
    type Item = Result<i64, CliError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let item = match self.records.next()? {
            Err(e) => Err(csv_error(&self.path, e)),
            Ok(record) => {
                let line = record.position().map_or(0, |p| p.line());
                match record.get(self.index) {
                    Some(cell) => parse_cell(&self.path, line, self.index as u64 + 1, cell),
                    None => Err(CliError::Parse {
                        path: self.path.clone(),
                        line,
                        column: self.index as u64 + 1,
                        token: String::new(),
                    }),
                }
            }
        };
        self.failed = item.is_err();
        Some(item)
    }
}

/// One pattern per nonempty line, whitespace-separated.
pub fn read_pattern_list(path: &Path) -> Result<Vec<Vec<i64>>, CliError> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)
    } else {
        File::open(path).and_then(|mut f| f.read_to_string(&mut text))
    }
    .map_err(|e| CliError::io(path, e))?;

    let mut patterns = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut pattern = Vec::new();
        for (column, token) in tokens_with_columns(line) {
            pattern.push(parse_cell(path, line_no as u64 + 1, column, token)?);
        }
        patterns.push(pattern);
    }
    Ok(patterns)
}

fn tokens_with_columns(line: &str) -> impl Iterator<Item = (u64, &str)> {
    let mut rest = line;
    let mut offset = 0usize;
    std::iter::from_fn(move || {
        let skip = rest.find(|c: char| !c.is_whitespace())?;
        offset += rest[..skip].chars().count();
        rest = &rest[skip..];
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..end];
        let column = offset as u64 + 1;
        offset += token.chars().count();
        rest = &rest[end..];
        Some((column, token))
    })
}
