//! GloVe text format: one `token v1 v2 ... vd` line per entry. The vector
//! dimension is inferred from the first line and enforced on every later
//! line.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::{EmbeddingModel, LoadedModel, SourceFormat};
use crate::error::{Error, Result};

pub fn load_glove_text(path: impl AsRef<Path>) -> Result<LoadedModel> {
    let file = File::open(path.as_ref())?;
    read_glove_text(BufReader::new(file))
}

/// Parses GloVe text from any reader. Errors carry 1-based line numbers.
pub fn read_glove_text(reader: impl Read) -> Result<LoadedModel> {
    let reader = BufReader::new(reader);
    let mut model: Option<EmbeddingModel> = None;
    let mut warnings = Vec::new();
    let mut values: Vec<f64> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        let mut fields = line.split_whitespace();
        let token = fields.next().ok_or_else(|| Error::GloveParse {
            line: line_no,
            message: "empty line".into(),
        })?;

        values.clear();
        for field in fields {
            let v: f64 = field.parse().map_err(|_| Error::GloveParse {
                line: line_no,
                message: format!("invalid float {field:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::GloveParse {
                    line: line_no,
                    message: format!("non-finite value {field:?}"),
                });
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::GloveParse {
                line: line_no,
                message: format!("no vector values after token {token:?}"),
            });
        }

        if model.is_none() {
            model = Some(EmbeddingModel::new(values.len(), SourceFormat::GloveText)?);
        }
        let model = model.as_mut().expect("model initialized above");
        if values.len() != model.dimension() {
            return Err(Error::GloveParse {
                line: line_no,
                message: format!(
                    "expected {} values, found {}",
                    model.dimension(),
                    values.len()
                ),
            });
        }

        let replaced = model.insert(token, &values).map_err(|e| Error::GloveParse {
            line: line_no,
            message: e.to_string(),
        })?;
        if replaced {
            warnings.push(format!(
                "duplicate token {token:?} at line {line_no}: keeping last occurrence"
            ));
        }
    }

    match model {
        Some(model) => Ok(LoadedModel { model, warnings }),
        None => Err(Error::EmptyInput("glove text file has no entries".into())),
    }
}

/// Writes the model in GloVe text format. Values use the shortest decimal
/// form that parses back to the same `f64`, so a write/read cycle reproduces
/// the model exactly.
pub fn write_glove_text(model: &EmbeddingModel, mut writer: impl Write) -> Result<()> {
    let mut line = String::new();
    for (token, vector) in model.iter() {
        if token.chars().any(char::is_whitespace) {
            return Err(Error::InvalidParameter(format!(
                "token {token:?} contains whitespace and cannot be written as glove text"
            )));
        }
        line.clear();
        line.push_str(token);
        for v in vector {
            line.push(' ');
            line.push_str(&v.to_string());
        }
        line.push('\n');
        writer.write_all(line.as_bytes())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_file() {
        let text = "the 0.1 0.2 0.3\ncat -1.5 2.0 0.25\n";
        let loaded = read_glove_text(text.as_bytes()).unwrap();
        assert_eq!(loaded.model.dimension(), 3);
        assert_eq!(loaded.model.len(), 2);
        assert_eq!(loaded.model.get("cat").unwrap(), &[-1.5, 2.0, 0.25]);
        assert!(loaded.warnings.is_empty());
    }

    #[test]
    fn infers_dimension_from_first_line() {
        let text = "a 1 2\nb 3 4\n";
        let loaded = read_glove_text(text.as_bytes()).unwrap();
        assert_eq!(loaded.model.dimension(), 2);
        assert_eq!(loaded.model.get("a").unwrap(), &[1.0, 2.0]);
    }

    #[test]
    fn rejects_field_count_mismatch() {
        let text = "a 1 2\nb 3\n";
        let err = read_glove_text(text.as_bytes()).unwrap_err();
        match err {
            Error::GloveParse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn rejects_bad_and_non_finite_floats() {
        assert!(read_glove_text("a 1 x\n".as_bytes()).is_err());
        assert!(read_glove_text("a 1 inf\n".as_bytes()).is_err());
        assert!(read_glove_text("a nan 1\n".as_bytes()).is_err());
    }

    #[test]
    fn rejects_empty_file_blank_line_and_bare_token() {
        assert!(matches!(
            read_glove_text("".as_bytes()),
            Err(Error::EmptyInput(_))
        ));
        assert!(read_glove_text("a 1 2\n\nb 3 4\n".as_bytes()).is_err());
        assert!(read_glove_text("lonely\n".as_bytes()).is_err());
    }

    #[test]
    fn duplicate_token_keeps_last_and_warns() {
        let text = "a 1 2\na 5 6\n";
        let loaded = read_glove_text(text.as_bytes()).unwrap();
        assert_eq!(loaded.model.len(), 1);
        assert_eq!(loaded.model.get("a").unwrap(), &[5.0, 6.0]);
        assert_eq!(loaded.warnings.len(), 1);
        assert!(loaded.warnings[0].contains("duplicate"));
    }

    #[test]
    fn tolerates_crlf_and_missing_final_newline() {
        let text = "a 1 2\r\nb 3 4";
        let loaded = read_glove_text(text.as_bytes()).unwrap();
        assert_eq!(loaded.model.len(), 2);
        assert_eq!(loaded.model.get("b").unwrap(), &[3.0, 4.0]);
    }

    #[test]
    fn write_then_read_is_exact() {
        let mut m = EmbeddingModel::new(3, SourceFormat::GloveText).unwrap();
        m.insert("alpha", &[0.1, -2.75, 1e-17]).unwrap();
        m.insert("beta", &[3.0, 0.0, -0.0625]).unwrap();
        let mut buf = Vec::new();
        write_glove_text(&m, &mut buf).unwrap();
        let loaded = read_glove_text(buf.as_slice()).unwrap();
        assert_eq!(loaded.model, m);
    }

    #[test]
    fn write_rejects_whitespace_tokens() {
        let mut m = EmbeddingModel::new(1, SourceFormat::GloveText).unwrap();
        m.insert("two words", &[1.0]).unwrap();
        assert!(write_glove_text(&m, Vec::new()).is_err());
    }
}
