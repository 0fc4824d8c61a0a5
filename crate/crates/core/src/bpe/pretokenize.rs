//! Splits text into the pieces that BPE merges operate within.

use super::bytemap;
use super::model::{MarkerPolicy, TokenizerModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Letter,
    Digit,
    Other,
    Space,
}

fn class(c: char) -> Class {
    if c.is_whitespace() {
        Class::Space
    } else if c.is_alphabetic() {
        Class::Letter
    } else if c.is_numeric() {
        Class::Digit
    } else {
        Class::Other
    }
}

/// Byte-level piece boundaries: runs of letters, digits or other symbols, each
/// optionally preceded by one ASCII space; whitespace runs keep their last
/// space for the following word. Concatenating the pieces gives back `text`.
pub fn split_pieces(text: &str) -> Vec<&str> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let n = chars.len();
    let offset = |k: usize| if k < n { chars[k].0 } else { text.len() };
    let mut pieces = Vec::new();
    let mut i = 0;
    while i < n {
        let c = chars[i].1;
        let cls = class(c);
        let spaced_word = c == ' ' && i + 1 < n && class(chars[i + 1].1) != Class::Space;
        if cls != Class::Space || spaced_word {
            let mut j = if spaced_word { i + 1 } else { i };
            let run = class(chars[j].1);
            while j < n && class(chars[j].1) == run {
                j += 1;
            }
            pieces.push(&text[offset(i)..offset(j)]);
            i = j;
        } else {
            let mut j = i;
            while j < n && class(chars[j].1) == Class::Space {
                j += 1;
            }
            let end = if j < n && j - i >= 2 { j - 1 } else { j };
            pieces.push(&text[offset(i)..offset(end)]);
            i = end;
        }
    }
    pieces
}

/// Pre-tokenizes `text` for `model`.
///
/// Byte-level models get byte-mapped pieces (a leading space shows up as 'Ġ').
/// Other models split on whitespace; under [`MarkerPolicy::UnderscorePrefix`]
/// every piece, the first included, carries a '▁' prefix.
pub fn pretokenize(text: &str, model: &TokenizerModel) -> Vec<String> {
    if model.byte_level() {
        return split_pieces(text)
            .into_iter()
            .map(bytemap::encode_bytes)
            .collect();
    }
    text.split_whitespace()
        .map(|word| match model.marker_policy() {
            MarkerPolicy::UnderscorePrefix => format!("{}{word}", super::UNDERSCORE),
            _ => word.to_string(),
        })
        .collect()
}
