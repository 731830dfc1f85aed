//! word2vec binary format: an ASCII header line `vocab_size dimension`,
//! then per entry the token bytes, a single 0x20, and `dimension`
//! little-endian f32 values. A newline after the floats is optional and
//! tolerated in either position (trailing, or glued to the next token).

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::{EmbeddingModel, LoadedModel, SourceFormat};
use crate::error::{Error, Result};

const MAX_HEADER_BYTES: u64 = 256;
const MAX_TOKEN_BYTES: u64 = 65536;

pub fn load_word2vec_bin(path: impl AsRef<Path>) -> Result<LoadedModel> {
    let file = File::open(path.as_ref())?;
    read_word2vec_bin(BufReader::new(file))
}

/// Parses word2vec binary data from any reader. Errors carry the byte
/// offset where parsing stopped. Token bytes that are not valid UTF-8 are
/// replaced lossily.
pub fn read_word2vec_bin(reader: impl Read) -> Result<LoadedModel> {
    let mut r = Tracked {
        inner: BufReader::new(reader),
        pos: 0,
    };

    let header = r.read_delimited(b'\n', MAX_HEADER_BYTES, "header")?;
    let header_text = std::str::from_utf8(&header).map_err(|_| Error::Word2VecParse {
        offset: 0,
        message: "header is not ascii".into(),
    })?;
    let mut fields = header_text.split_whitespace();
    let vocab_size = parse_header_field(fields.next(), "vocabulary size")?;
    let dimension = parse_header_field(fields.next(), "dimension")?;
    if fields.next().is_some() {
        return Err(Error::Word2VecParse {
            offset: 0,
            message: format!("header {header_text:?} has more than two fields"),
        });
    }

    let mut model = EmbeddingModel::new(dimension, SourceFormat::Word2VecBinary)
        .map_err(|e| Error::Word2VecParse {
            offset: 0,
            message: e.to_string(),
        })?;
    let mut warnings = Vec::new();
    let mut vector = vec![0.0f64; dimension];

    for _ in 0..vocab_size {
        let token_start = r.pos;
        let raw = r.read_delimited(b' ', MAX_TOKEN_BYTES, "token")?;
        let stripped: &[u8] = {
            let mut s = raw.as_slice();
            while let [b'\n' | b'\r', rest @ ..] = s {
                s = rest;
            }
            s
        };
        if stripped.is_empty() {
            return Err(Error::Word2VecParse {
                offset: token_start,
                message: "empty token".into(),
            });
        }
        let token = String::from_utf8_lossy(stripped).into_owned();

        for slot in vector.iter_mut() {
            let at = r.pos;
            let mut le = [0u8; 4];
            r.read_exact(&mut le, "vector value")?;
            let v = f32::from_le_bytes(le);
            if !v.is_finite() {
                return Err(Error::Word2VecParse {
                    offset: at,
                    message: format!("non-finite vector value for token {token:?}"),
                });
            }
            *slot = f64::from(v);
        }

        let replaced = model
            .insert(&token, &vector)
            .map_err(|e| Error::Word2VecParse {
                offset: token_start,
                message: e.to_string(),
            })?;
        if replaced {
            warnings.push(format!(
                "duplicate token {token:?} at byte {token_start}: keeping last occurrence"
            ));
        }
    }

    r.expect_end()?;
    if model.is_empty() {
        return Err(Error::EmptyInput("word2vec file has no entries".into()));
    }
    Ok(LoadedModel { model, warnings })
}

fn parse_header_field(field: Option<&str>, what: &str) -> Result<usize> {
    let field = field.ok_or_else(|| Error::Word2VecParse {
        offset: 0,
        message: format!("header is missing the {what}"),
    })?;
    let value: usize = field.parse().map_err(|_| Error::Word2VecParse {
        offset: 0,
        message: format!("invalid {what} {field:?}"),
    })?;
    if value == 0 {
        return Err(Error::Word2VecParse {
            offset: 0,
            message: format!("{what} must be at least 1"),
        });
    }
    Ok(value)
}

struct Tracked<R> {
    inner: R,
    pos: u64,
}

impl<R: BufRead> Tracked<R> {
    /// Reads up to `cap` bytes ending at `delim`; the delimiter is consumed
    /// and not returned.
    fn read_delimited(&mut self, delim: u8, cap: u64, what: &str) -> Result<Vec<u8>> {
        let start = self.pos;
        let mut buf = Vec::new();
        let n = self
            .inner
            .by_ref()
            .take(cap + 1)
            .read_until(delim, &mut buf)?;
        self.pos += n as u64;
        if buf.last() != Some(&delim) {
            let message = if n as u64 > cap {
                format!("{what} exceeds {cap} bytes")
            } else {
                format!("unexpected end of file while reading {what}")
            };
            return Err(Error::Word2VecParse {
                offset: start,
                message,
            });
        }
        buf.pop();
        Ok(buf)
    }

    fn read_exact(&mut self, buf: &mut [u8], what: &str) -> Result<()> {
        let start = self.pos;
        self.inner.read_exact(buf).map_err(|e| {
            if e.kind() == std::io::ErrorKind::UnexpectedEof {
                Error::Word2VecParse {
                    offset: start,
                    message: format!("unexpected end of file while reading {what}"),
                }
            } else {
                Error::Io(e)
            }
        })?;
        self.pos += buf.len() as u64;
        Ok(())
    }

    /// Consumes an optional final newline, then requires end of input.
    fn expect_end(&mut self) -> Result<()> {
        let mut byte = [0u8; 1];
        loop {
            let at = self.pos;
            match self.inner.read(&mut byte)? {
                0 => return Ok(()),
                _ => {
                    self.pos += 1;
                    if byte[0] != b'\n' && byte[0] != b'\r' {
                        return Err(Error::Word2VecParse {
                            offset: at,
                            message: "trailing data after the last entry".into(),
                        });
                    }
                }
            }
        }
    }
}

/// Writes the model in word2vec binary format. Values are narrowed to f32;
/// a write/read cycle is exact when every value is representable in f32
/// (always true for models loaded from this format).
pub fn write_word2vec_bin(model: &EmbeddingModel, mut writer: impl Write) -> Result<()> {
    writer.write_all(format!("{} {}\n", model.len(), model.dimension()).as_bytes())?;
    for (token, vector) in model.iter() {
        if token.as_bytes().iter().any(|&b| b == b' ' || b == b'\n' || b == b'\r') {
            return Err(Error::InvalidParameter(format!(
                "token {token:?} contains a space or newline and cannot be written as word2vec binary"
            )));
        }
        writer.write_all(token.as_bytes())?;
        writer.write_all(b" ")?;
        for &v in vector {
            writer.write_all(&(v as f32).to_le_bytes())?;
        }
        writer.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_bytes(trailing_newlines: bool) -> Vec<u8> {
        let mut buf = Vec::new();
        buf.extend_from_slice(b"2 3\n");
        buf.extend_from_slice(b"cat ");
        for v in [1.0f32, -2.5, 0.25] {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        if trailing_newlines {
            buf.push(b'\n');
        }
        buf.extend_from_slice(b"dog ");
        for v in [0.5f32, 4.0, -1.0] {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        if trailing_newlines {
            buf.push(b'\n');
        }
        buf
    }

    #[test]
    fn parses_with_and_without_newlines() {
        for trailing in [true, false] {
            let loaded = read_word2vec_bin(sample_bytes(trailing).as_slice()).unwrap();
            assert_eq!(loaded.model.dimension(), 3);
            assert_eq!(loaded.model.len(), 2);
            assert_eq!(loaded.model.get("cat").unwrap(), &[1.0, -2.5, 0.25]);
            assert_eq!(loaded.model.get("dog").unwrap(), &[0.5, 4.0, -1.0]);
        }
    }

    #[test]
    fn f32_values_widen_exactly() {
        let mut buf = Vec::new();
        buf.extend_from_slice(b"1 2\n");
        buf.extend_from_slice(b"x ");
        buf.extend_from_slice(&0.1f32.to_le_bytes());
        buf.extend_from_slice(&(-3.7f32).to_le_bytes());
        let loaded = read_word2vec_bin(buf.as_slice()).unwrap();
        let v = loaded.model.get("x").unwrap();
        assert_eq!(v[0], f64::from(0.1f32));
        assert_eq!(v[1], f64::from(-3.7f32));
    }

    #[test]
    fn truncated_vector_reports_offset() {
        let mut buf = sample_bytes(false);
        buf.truncate(buf.len() - 2);
        let err = read_word2vec_bin(buf.as_slice()).unwrap_err();
        match err {
            Error::Word2VecParse { message, .. } => {
                assert!(message.contains("end of file"), "{message}");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn missing_entry_is_an_error() {
        let mut buf = Vec::new();
        buf.extend_from_slice(b"3 3\n");
        buf.extend_from_slice(&sample_bytes(false)[4..]);
        assert!(read_word2vec_bin(buf.as_slice()).is_err());
    }

    #[test]
    fn trailing_garbage_is_an_error() {
        let mut buf = sample_bytes(true);
        buf.extend_from_slice(b"extra");
        assert!(read_word2vec_bin(buf.as_slice()).is_err());
    }

    #[test]
    fn rejects_bad_headers() {
        assert!(read_word2vec_bin(b"0 3\nx".as_slice()).is_err());
        assert!(read_word2vec_bin(b"2 0\nx".as_slice()).is_err());
        assert!(read_word2vec_bin(b"2\nx".as_slice()).is_err());
        assert!(read_word2vec_bin(b"2 3 4\nx".as_slice()).is_err());
        assert!(read_word2vec_bin(b"abc def\nx".as_slice()).is_err());
        assert!(read_word2vec_bin(b"".as_slice()).is_err());
    }

    #[test]
    fn rejects_non_finite_values() {
        let mut buf = Vec::new();
        buf.extend_from_slice(b"1 1\n");
        buf.extend_from_slice(b"x ");
        buf.extend_from_slice(&f32::NAN.to_le_bytes());
        assert!(read_word2vec_bin(buf.as_slice()).is_err());
    }

    #[test]
    fn lossy_tokens_survive_a_round_trip() {
        let mut buf = Vec::new();
        buf.extend_from_slice(b"1 1\n");
        buf.extend_from_slice(&[0xFF, 0xFE, b'a', b' ']);
        buf.extend_from_slice(&2.0f32.to_le_bytes());
        let loaded = read_word2vec_bin(buf.as_slice()).unwrap();
        assert_eq!(loaded.model.len(), 1);

        let mut out = Vec::new();
        write_word2vec_bin(&loaded.model, &mut out).unwrap();
        let again = read_word2vec_bin(out.as_slice()).unwrap();
        assert_eq!(again.model, loaded.model);
    }

    #[test]
    fn write_then_read_is_exact() {
        let loaded = read_word2vec_bin(sample_bytes(true).as_slice()).unwrap();
        let mut out = Vec::new();
        write_word2vec_bin(&loaded.model, &mut out).unwrap();
        let again = read_word2vec_bin(out.as_slice()).unwrap();
        assert_eq!(again.model, loaded.model);
    }
}
