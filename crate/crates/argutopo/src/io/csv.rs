//! Plain CSV readers and writers for scalar series and point clouds.
//!
//! Lines starting with `#` are comments. A series file holds one value per
//! line; a cloud file holds one comma-separated point per line, with the
//! dimension fixed by the first data line. Values are written in the
//! shortest decimal form that parses back to the same `f64`.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::signal::{PointCloud, TimeSeries};

pub fn load_series_csv(path: impl AsRef<Path>) -> Result<TimeSeries> {
    read_series_csv(File::open(path.as_ref())?)
}

pub fn read_series_csv(reader: impl Read) -> Result<TimeSeries> {
    let mut values = Vec::new();
    for (line_no, line) in data_lines(reader) {
        let line = line?;
        if line.contains(',') {
            return Err(Error::CsvParse {
                line: line_no,
                message: "expected a single value per line".into(),
            });
        }
        values.push(parse_value(&line, line_no)?);
    }
    if values.is_empty() {
        return Err(Error::EmptyInput("series file has no values".into()));
    }
    TimeSeries::new(values)
}

pub fn write_series_csv(series: &TimeSeries, mut writer: impl Write) -> Result<()> {
    for v in series.values() {
        writeln!(writer, "{v}")?;
    }
    Ok(())
}

pub fn load_cloud_csv(path: impl AsRef<Path>) -> Result<PointCloud> {
    read_cloud_csv(File::open(path.as_ref())?)
}

pub fn read_cloud_csv(reader: impl Read) -> Result<PointCloud> {
    let mut data = Vec::new();
    let mut dim = None;
    for (line_no, line) in data_lines(reader) {
        let line = line?;
        let mut count = 0;
        for field in line.split(',') {
            data.push(parse_value(field.trim(), line_no)?);
            count += 1;
        }
        match dim {
            None => dim = Some(count),
            Some(d) if d != count => {
                return Err(Error::CsvParse {
                    line: line_no,
                    message: format!("expected {d} coordinates, found {count}"),
                });
            }
            Some(_) => {}
        }
    }
    let dim = dim.ok_or_else(|| Error::EmptyInput("cloud file has no points".into()))?;
    PointCloud::new(data, dim)
}

pub fn write_cloud_csv(cloud: &PointCloud, mut writer: impl Write) -> Result<()> {
    let mut line = String::new();
    for point in cloud.iter_points() {
        line.clear();
        for (i, v) in point.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&v.to_string());
        }
        line.push('\n');
        writer.write_all(line.as_bytes())?;
    }
    Ok(())
}

fn parse_value(field: &str, line_no: usize) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::CsvParse {
        line: line_no,
        message: format!("invalid float {field:?}"),
    })?;
    if !v.is_finite() {
        return Err(Error::CsvParse {
            line: line_no,
            message: format!("non-finite value {field:?}"),
        });
    }
    Ok(v)
}

/// Yields `(1-based line number, content)` for every non-comment line,
/// trimming CR and rejecting blank interior lines via the empty string.
fn data_lines(reader: impl Read) -> impl Iterator<Item = (usize, Result<String>)> {
    BufReader::new(reader)
        .lines()
        .enumerate()
        .filter_map(|(idx, line)| {
            let line_no = idx + 1;
            match line {
                Err(e) => Some((line_no, Err(Error::Io(e)))),
                Ok(raw) => {
                    let content = raw.strip_suffix('\r').unwrap_or(&raw);
                    if content.trim_start().starts_with('#') {
                        None
                    } else if content.trim().is_empty() {
                        Some((
                            line_no,
                            Err(Error::CsvParse {
                                line: line_no,
                                message: "blank line".into(),
                            }),
                        ))
                    } else {
                        Some((line_no, Ok(content.to_string())))
                    }
                }
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_round_trip_is_exact() {
        let z = TimeSeries::new(vec![0.1, -2.0, 1.0 / 3.0, 5e-324]).unwrap();
        let mut buf = Vec::new();
        write_series_csv(&z, &mut buf).unwrap();
        let back = read_series_csv(buf.as_slice()).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn series_accepts_comments_rejects_blanks() {
        let ok = read_series_csv("# header\n1.5\n-2\n".as_bytes()).unwrap();
        assert_eq!(ok.values(), &[1.5, -2.0]);

        assert!(read_series_csv("1.0\n\n2.0\n".as_bytes()).is_err());
        assert!(read_series_csv("1.0,2.0\n".as_bytes()).is_err());
        assert!(read_series_csv("abc\n".as_bytes()).is_err());
        assert!(read_series_csv("inf\n".as_bytes()).is_err());
        assert!(read_series_csv("".as_bytes()).is_err());
        assert!(read_series_csv("# only a comment\n".as_bytes()).is_err());
    }

    #[test]
    fn cloud_round_trip_is_exact() {
        let cloud = PointCloud::from_rows(&[
            vec![0.25, -1.0, 3.5],
            vec![1.0 / 3.0, 0.0, -0.0],
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_cloud_csv(&cloud, &mut buf).unwrap();
        let back = read_cloud_csv(buf.as_slice()).unwrap();
        assert_eq!(back, cloud);
    }

    #[test]
    fn cloud_enforces_consistent_dimensions() {
        assert!(read_cloud_csv("1,2\n3,4,5\n".as_bytes()).is_err());
        let ok = read_cloud_csv("1, 2\n3 ,4\n".as_bytes()).unwrap();
        assert_eq!(ok.n_points(), 2);
        assert_eq!(ok.dim(), 2);
    }

    #[test]
    fn cloud_reports_error_lines() {
        let err = read_cloud_csv("1,2\nx,4\n".as_bytes()).unwrap_err();
        match err {
            Error::CsvParse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn crlf_is_tolerated() {
        let z = read_series_csv("1.0\r\n2.0\r\n".as_bytes()).unwrap();
        assert_eq!(z.values(), &[1.0, 2.0]);
    }
}
