//! Pretrained word-embedding models and text tokenization.

mod glove;
mod word2vec;

pub use glove::{load_glove_text, write_glove_text};
pub use word2vec::{load_word2vec_bin, write_word2vec_bin};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// On-disk format of an embedding model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    GloveText,
    Word2VecBinary,
}

impl SourceFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceFormat::GloveText => "glove-text",
            SourceFormat::Word2VecBinary => "word2vec-bin",
        }
    }
}

impl std::str::FromStr for SourceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "glove-text" => Ok(SourceFormat::GloveText),
            "word2vec-bin" => Ok(SourceFormat::Word2VecBinary),
            other => Err(Error::InvalidParameter(format!(
                "unknown model format {other:?} (expected glove-text or word2vec-bin)"
            ))),
        }
    }
}

/// A vocabulary of tokens with one fixed-dimension real vector per token.
///
/// Vectors are stored as `f64` regardless of the source precision; `f32`
/// values widen exactly. Insertion order of first occurrence is preserved so
/// that writing a model back out is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    dimension: usize,
    tokens: Vec<String>,
    index: HashMap<String, usize>,
    vectors: Vec<f64>,
    source_format: SourceFormat,
}

impl EmbeddingModel {
    pub fn new(dimension: usize, source_format: SourceFormat) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter(
                "embedding dimension must be at least 1".into(),
            ));
        }
        Ok(EmbeddingModel {
            dimension,
            tokens: Vec::new(),
            index: HashMap::new(),
            vectors: Vec::new(),
            source_format,
        })
    }

    /// Inserts a token. A repeated token overwrites the stored vector in
    /// place (last occurrence wins) and returns `true`.
    pub fn insert(&mut self, token: &str, vector: &[f64]) -> Result<bool> {
        if token.is_empty() {
            return Err(Error::InvalidParameter("empty token".into()));
        }
        if vector.len() != self.dimension {
            return Err(Error::InvalidParameter(format!(
                "vector for {token:?} has {} entries, expected {}",
                vector.len(),
                self.dimension
            )));
        }
        if let Some(bad) = vector.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "vector for {token:?} contains non-finite value {bad}"
            )));
        }
        match self.index.get(token) {
            Some(&slot) => {
                let start = slot * self.dimension;
                self.vectors[start..start + self.dimension].copy_from_slice(vector);
                Ok(true)
            }
            None => {
                let slot = self.tokens.len();
                self.tokens.push(token.to_string());
                self.index.insert(token.to_string(), slot);
                self.vectors.extend_from_slice(vector);
                Ok(false)
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn source_format(&self) -> SourceFormat {
        self.source_format
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    pub fn get(&self, token: &str) -> Option<&[f64]> {
        self.index.get(token).map(|&slot| {
            let start = slot * self.dimension;
            &self.vectors[start..start + self.dimension]
        })
    }

    /// Tokens in first-occurrence order.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.tokens
            .iter()
            .zip(self.vectors.chunks_exact(self.dimension))
            .map(|(t, v)| (t.as_str(), v))
    }
}

/// A model together with non-fatal notes gathered while loading it.
#[derive(Debug)]
pub struct LoadedModel {
    pub model: EmbeddingModel,
    pub warnings: Vec<String>,
}

/// How raw text is split into tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenizerPolicy {
    /// Lowercase every token.
    pub lowercase: bool,
    /// Trim leading and trailing punctuation from each whitespace-delimited
    /// chunk. Interior punctuation (e.g. the apostrophe in "it's") is kept.
    pub strip_punctuation: bool,
}

impl Default for TokenizerPolicy {
    fn default() -> Self {
        TokenizerPolicy {
            lowercase: true,
            strip_punctuation: true,
        }
    }
}

/// One token plus the byte span in the source text it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    /// Byte offset of the first byte of the token in the source.
    pub start: usize,
    /// Byte offset one past the last byte of the token in the source.
    pub end: usize,
}

/// Ordered tokens extracted from one document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenSequence {
    pub tokens: Vec<Token>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.text.as_str())
    }
}

fn is_edge_punctuation(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '\u{2018}' | '\u{2019}' | '\u{201C}' | '\u{201D}' | '\u{2013}' | '\u{2014}'
                | '\u{2026}' | '\u{00AB}' | '\u{00BB}'
        )
}

/// Splits text on Unicode whitespace and applies the policy to each chunk.
/// Chunks that become empty after trimming are dropped.
pub fn tokenize(text: &str, policy: TokenizerPolicy) -> TokenSequence {
    let mut tokens = Vec::new();
    for (chunk_start, chunk) in split_whitespace_spans(text) {
        let (trimmed, offset) = if policy.strip_punctuation {
            trim_edge_punctuation(chunk)
        } else {
            (chunk, 0)
        };
        if trimmed.is_empty() {
            continue;
        }
        let text = if policy.lowercase {
            trimmed.to_lowercase()
        } else {
            trimmed.to_string()
        };
        let start = chunk_start + offset;
        tokens.push(Token {
            text,
            start,
            end: start + trimmed.len(),
        });
    }
    TokenSequence { tokens }
}

fn split_whitespace_spans(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace()
        .map(move |chunk| (chunk.as_ptr() as usize - text.as_ptr() as usize, chunk))
}

fn trim_edge_punctuation(chunk: &str) -> (&str, usize) {
    let trimmed_front = chunk.trim_start_matches(is_edge_punctuation);
    let offset = chunk.len() - trimmed_front.len();
    (trimmed_front.trim_end_matches(is_edge_punctuation), offset)
}

/// How to treat tokens missing from the model during lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OovPolicy {
    /// Drop unknown tokens, recording which positions were skipped.
    #[default]
    Skip,
    /// Fail with the list of unknown tokens.
    Fail,
}

/// The word-vector trajectory of a document: one vector per kept token, in
/// token order.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSequence {
    dimension: usize,
    vectors: Vec<f64>,
    skipped: Vec<(usize, String)>,
}

impl VectorSequence {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len() / self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.vectors.chunks_exact(self.dimension)
    }

    /// `(token position, token text)` pairs dropped as out-of-vocabulary.
    pub fn skipped(&self) -> &[(usize, String)] {
        &self.skipped
    }
}

/// Looks up each token in the model, producing the document trajectory.
pub fn embed_tokens(
    model: &EmbeddingModel,
    tokens: &TokenSequence,
    policy: OovPolicy,
) -> Result<VectorSequence> {
    let mut vectors = Vec::new();
    let mut skipped = Vec::new();
    let mut missing: Vec<String> = Vec::new();
    for (position, token) in tokens.texts().enumerate() {
        match model.get(token) {
            Some(v) => vectors.extend_from_slice(v),
            None => match policy {
                OovPolicy::Skip => skipped.push((position, token.to_string())),
                OovPolicy::Fail => {
                    if !missing.iter().any(|m| m == token) {
                        missing.push(token.to_string());
                    }
                }
            },
        }
    }
    if !missing.is_empty() {
        return Err(Error::OutOfVocabulary { tokens: missing });
    }
    Ok(VectorSequence {
        dimension: model.dimension(),
        vectors,
        skipped,
    })
}
