//! Token dumps produced by tokenizers that are not implemented natively.
//!
//! Format (UTF-8): a header line `<name> <vocab_size> [seconds=<f64>] [marker=<policy>]`
//! followed by one raw token surface per line.

use std::collections::BTreeSet;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::model::MarkerPolicy;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalTokens {
    pub name: String,
    pub declared_vocab_size: u64,
    pub declared_wall_seconds: Option<f64>,
    pub marker_policy: MarkerPolicy,
    pub total_tokens: u64,
    pub unique: BTreeSet<String>,
}

pub fn ingest_external_tokens(path: impl AsRef<Path>) -> Result<ExternalTokens> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_external_tokens(std::io::BufReader::new(file), path)
}

pub fn parse_external_tokens(mut reader: impl BufRead, path: &Path) -> Result<ExternalTokens> {
    let malformed = |line: usize, message: String| Error::MalformedLine {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut buf = Vec::new();
    let mut read_line = |buf: &mut Vec<u8>, line: usize| -> Result<Option<String>> {
        buf.clear();
        let n = reader.read_until(b'\n', buf).map_err(|e| Error::io(path, e))?;
        if n == 0 {
            return Ok(None);
        }
        let text = std::str::from_utf8(buf).map_err(|_| Error::InvalidUtf8 {
            path: path.to_path_buf(),
            line,
        })?;
        let text = text.strip_suffix('\n').unwrap_or(text);
        let text = text.strip_suffix('\r').unwrap_or(text);
        Ok(Some(text.to_string()))
    };

    let header = read_line(&mut buf, 1)?
        .ok_or_else(|| malformed(1, "missing header line `<name> <vocab_size>`".into()))?;
    let mut fields = header.split_whitespace();
    let (Some(name), Some(vocab)) = (fields.next(), fields.next()) else {
        return Err(malformed(1, format!("missing header `<name> <vocab_size>`: {header:?}")));
    };
    let declared_vocab_size = vocab
        .parse::<u64>()
        .map_err(|_| malformed(1, format!("vocabulary size {vocab:?} is not an integer")))?;
    let mut declared_wall_seconds = None;
    let mut marker_policy = MarkerPolicy::None;
    for field in fields {
        match field.split_once('=') {
            Some(("seconds", v)) => {
                let secs = v
                    .parse::<f64>()
                    .ok()
                    .filter(|s| s.is_finite() && *s >= 0.0)
                    .ok_or_else(|| malformed(1, format!("bad seconds value {v:?}")))?;
                declared_wall_seconds = Some(secs);
            }
            Some(("marker", v)) => {
                marker_policy = v.parse().map_err(|e: Error| malformed(1, e.to_string()))?;
            }
            _ => return Err(malformed(1, format!("unrecognized header field {field:?}"))),
        }
    }

    let mut total_tokens = 0u64;
    let mut unique = BTreeSet::new();
    let mut line = 1;
    loop {
        line += 1;
        let Some(token) = read_line(&mut buf, line)? else { break };
        if token.is_empty() {
            return Err(malformed(line, "empty token line".into()));
        }
        total_tokens += 1;
        unique.insert(token);
    }

    Ok(ExternalTokens {
        name: name.to_string(),
        declared_vocab_size,
        declared_wall_seconds,
        marker_policy,
        total_tokens,
        unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ExternalTokens> {
        parse_external_tokens(text.as_bytes(), Path::new("dump"))
    }

    #[test]
    fn counts_and_unique_set() {
        let t = parse("toy 10\nev\nler\nev\n").unwrap();
        assert_eq!(t.name, "toy");
        assert_eq!(t.declared_vocab_size, 10);
        assert_eq!(t.total_tokens, 3);
        assert_eq!(t.unique.iter().collect::<Vec<_>>(), vec!["ev", "ler"]);
    }

    #[test]
    fn header_only() {
        let t = parse("toy 10\n").unwrap();
        assert_eq!(t.total_tokens, 0);
        assert!(t.unique.is_empty());
    }

    #[test]
    fn optional_header_fields() {
        let t = parse("gemma-2 256000 seconds=2.95 marker=underscore\n▁ev\n").unwrap();
        assert_eq!(t.declared_wall_seconds, Some(2.95));
        assert_eq!(t.marker_policy, MarkerPolicy::UnderscorePrefix);
    }

    #[test]
    fn missing_header_is_error() {
        assert!(parse("").is_err());
        assert!(parse("onlyname\nev\n").is_err());
        assert!(parse("name ten\nev\n").is_err());
    }

    #[test]
    fn empty_token_line_reports_line_number() {
        match parse("toy 3\nev\n\nler\n") {
            Err(Error::MalformedLine { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tokens_keep_inner_spaces() {
        let t = parse("toy 3\n ev\nev \n").unwrap();
        assert_eq!(t.unique.len(), 2);
    }
}
