//! From raw token surfaces to the forms the morphology engine looks up.

use serde::{Deserialize, Serialize};

use crate::bpe::{bytemap, MarkerPolicy, CONTINUATION, UNDERSCORE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharClass {
    Alphabetic,
    Numeric,
    Punctuation,
    Mixed,
    Whitespace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateToken {
    pub raw_surface: String,
    /// Markers stripped and bytes decoded; case preserved.
    pub clean_surface: String,
    /// Turkish-lowercased `clean_surface`.
    pub folded: String,
    pub char_class: CharClass,
}

/// Turkish-aware lowercasing: 'I' becomes 'ı' and 'İ' becomes 'i'; every
/// other character takes its default lowercase mapping.
pub fn turkish_fold(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            'I' => out.push('ı'),
            'İ' => out.push('i'),
            _ => out.extend(c.to_lowercase()),
        }
    }
    out
}

pub fn classify(s: &str) -> CharClass {
    if s.chars().all(char::is_whitespace) {
        // includes the empty string
        CharClass::Whitespace
    } else if s.chars().all(char::is_alphabetic) {
        CharClass::Alphabetic
    } else if s.chars().all(char::is_numeric) {
        CharClass::Numeric
    } else if s
        .chars()
        .all(|c| !c.is_alphanumeric() && !c.is_whitespace())
    {
        CharClass::Punctuation
    } else {
        CharClass::Mixed
    }
}

fn strip_repeated<'a>(mut s: &'a str, prefix: &str) -> &'a str {
    while let Some(rest) = s.strip_prefix(prefix) {
        s = rest;
    }
    s
}

/// Strips the word-boundary marker of `policy` and decodes byte-level text.
///
/// A byte-level token holding an incomplete UTF-8 sequence is not an error:
/// its clean surface carries U+FFFD and it is classed [`CharClass::Mixed`].
pub fn normalize(raw: &str, policy: MarkerPolicy) -> CandidateToken {
    let mut broken = false;
    let clean = match policy {
        MarkerPolicy::ByteLevelSpace => {
            let decoded = match bytemap::decode_bytes(raw) {
                Some(bytes) => match String::from_utf8(bytes) {
                    Ok(s) => s,
                    Err(e) => {
                        broken = true;
                        String::from_utf8_lossy(e.as_bytes()).into_owned()
                    }
                },
                // Not byte-mapped (e.g. a hand-written dump): take it literally.
                None => raw.to_string(),
            };
            decoded.trim_start_matches(' ').to_string()
        }
        MarkerPolicy::UnderscorePrefix => strip_repeated(raw, &UNDERSCORE.to_string())
            .replace(UNDERSCORE, " "),
        MarkerPolicy::HashHashContinuation => strip_repeated(raw, CONTINUATION).to_string(),
        MarkerPolicy::None => raw.to_string(),
    };
    let char_class = if broken { CharClass::Mixed } else { classify(&clean) };
    CandidateToken {
        raw_surface: raw.to_string(),
        folded: turkish_fold(&clean),
        clean_surface: clean,
        char_class,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_marker_stripped() {
        let t = normalize("Ġler", MarkerPolicy::ByteLevelSpace);
        assert_eq!(t.clean_surface, "ler");
        assert_eq!(t.char_class, CharClass::Alphabetic);
    }

    #[test]
    fn byte_level_decoding() {
        let t = normalize("ĠbahÃ§e", MarkerPolicy::ByteLevelSpace);
        assert_eq!(t.clean_surface, "bahçe");
        let t = normalize("Ãĩocuklar", MarkerPolicy::ByteLevelSpace);
        assert_eq!(t.clean_surface, "Çocuklar");
        assert_eq!(t.folded, "çocuklar");
    }

    #[test]
    fn partial_utf8_is_mixed() {
        // lone 0xC3 lead byte
        let t = normalize("Ã", MarkerPolicy::ByteLevelSpace);
        assert_eq!(t.char_class, CharClass::Mixed);
        assert!(t.clean_surface.contains('\u{FFFD}'));
    }

    #[test]
    fn other_markers() {
        assert_eq!(normalize("##imiz", MarkerPolicy::HashHashContinuation).clean_surface, "imiz");
        assert_eq!(normalize("▁ev", MarkerPolicy::UnderscorePrefix).clean_surface, "ev");
        assert_eq!(normalize("▁", MarkerPolicy::UnderscorePrefix).char_class, CharClass::Whitespace);
        assert_eq!(normalize("ĠĠ", MarkerPolicy::ByteLevelSpace).char_class, CharClass::Whitespace);
        assert_eq!(normalize("ĊĊ", MarkerPolicy::ByteLevelSpace).char_class, CharClass::Whitespace);
    }

    #[test]
    fn turkish_casing() {
        assert_eq!(turkish_fold("I"), "ı");
        assert_eq!(turkish_fold("İstanbul"), "istanbul");
        assert_eq!(turkish_fold("EVLER"), "evler");
        assert_eq!(turkish_fold("ÇOCUKLARI"), "çocukları");
        assert_eq!(turkish_fold("Çocuklar"), "çocuklar");
    }

    #[test]
    fn classes() {
        assert_eq!(classify("ev"), CharClass::Alphabetic);
        assert_eq!(classify("1923"), CharClass::Numeric);
        assert_eq!(classify("?!"), CharClass::Punctuation);
        assert_eq!(classify("ev1"), CharClass::Mixed);
        assert_eq!(classify(" ev"), CharClass::Mixed);
        assert_eq!(classify(""), CharClass::Whitespace);
    }
}
