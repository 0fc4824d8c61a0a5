use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::bytemap;
use super::model::{MarkerPolicy, TokenId, TokenizerModel};
use super::pretokenize::{pretokenize, split_pieces};
use crate::error::{Error, Result};

/// Token ids with their raw surfaces, in emission order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSequence {
    pub token_ids: Vec<TokenId>,
    pub surfaces: Vec<String>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.token_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.token_ids.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
struct Symbol {
    id: TokenId,
    prev: Option<usize>,
    next: Option<usize>,
    alive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Candidate {
    rank: u32,
    pos: usize,
    result: TokenId,
}

// Min-heap on (rank, pos): lowest rank first, leftmost among equal ranks.
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .rank
            .cmp(&self.rank)
            .then_with(|| other.pos.cmp(&self.pos))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn initial_symbols(piece: &str, model: &TokenizerModel, out: &mut Vec<TokenId>) -> Result<()> {
    if model.byte_level() {
        // Pieces are already byte-mapped; every char is a byte token.
        for c in piece.chars() {
            let b = bytemap::char_to_byte(c).expect("byte-mapped piece");
            out.push(model.byte_id(b));
        }
        return Ok(());
    }
    let hashhash = model.marker_policy() == MarkerPolicy::HashHashContinuation;
    let mut buf = String::new();
    let mut chars = piece.chars().peekable();
    let mut first = true;
    // A leading '▁' marker stays attached to the first character.
    if model.marker_policy() == MarkerPolicy::UnderscorePrefix {
        if let Some(&super::UNDERSCORE) = chars.peek() {
            buf.push(super::UNDERSCORE);
            chars.next();
        }
    }
    for c in chars {
        if hashhash && !first {
            buf.push_str(super::CONTINUATION);
        }
        buf.push(c);
        first = false;
        let id = match model.token_id(&buf) {
            Some(id) => id,
            None => model.unk_id().ok_or_else(|| Error::UnknownSymbol {
                symbol: buf.clone(),
            })?,
        };
        out.push(id);
        buf.clear();
    }
    Ok(())
}

fn apply_merges(ids: &mut Vec<TokenId>, model: &TokenizerModel) {
    if ids.len() < 2 {
        return;
    }
    let mut symbols: Vec<Symbol> = (0..ids.len())
        .map(|i| Symbol {
            id: ids[i],
            prev: i.checked_sub(1),
            next: (i + 1 < ids.len()).then_some(i + 1),
            alive: true,
        })
        .collect();
    let mut heap = BinaryHeap::with_capacity(ids.len());
    for pos in 0..ids.len() - 1 {
        if let Some(m) = model.merge(ids[pos], ids[pos + 1]) {
            heap.push(Candidate {
                rank: m.rank,
                pos,
                result: m.result,
            });
        }
    }
    while let Some(cand) = heap.pop() {
        let left = symbols[cand.pos];
        if !left.alive {
            continue;
        }
        let Some(right_pos) = left.next else { continue };
        let right = symbols[right_pos];
        // Skip stale candidates whose pair changed since they were queued.
        match model.merge(left.id, right.id) {
            Some(m) if m.rank == cand.rank && m.result == cand.result => {}
            _ => continue,
        }
        symbols[cand.pos].id = cand.result;
        symbols[cand.pos].next = right.next;
        symbols[right_pos].alive = false;
        if let Some(n) = right.next {
            symbols[n].prev = Some(cand.pos);
        }
        if let Some(p) = left.prev {
            if let Some(m) = model.merge(symbols[p].id, cand.result) {
                heap.push(Candidate {
                    rank: m.rank,
                    pos: p,
                    result: m.result,
                });
            }
        }
        if let Some(n) = right.next {
            if let Some(m) = model.merge(cand.result, symbols[n].id) {
                heap.push(Candidate {
                    rank: m.rank,
                    pos: cand.pos,
                    result: m.result,
                });
            }
        }
    }
    ids.clear();
    let mut cur = Some(0);
    while let Some(i) = cur {
        ids.push(symbols[i].id);
        cur = symbols[i].next;
    }
}

/// Encodes one already pre-tokenized piece, appending ids to `out`.
pub fn encode_piece(piece: &str, model: &TokenizerModel, out: &mut Vec<TokenId>) -> Result<()> {
    if piece.is_empty() {
        return Ok(());
    }
    if model.ignore_merges() {
        if let Some(id) = model.token_id(piece) {
            out.push(id);
            return Ok(());
        }
    }
    let mut ids = Vec::with_capacity(piece.len());
    initial_symbols(piece, model, &mut ids)?;
    apply_merges(&mut ids, model);
    out.extend_from_slice(&ids);
    Ok(())
}

/// Token ids for `text`, without materializing surfaces.
pub fn encode_ids(text: &str, model: &TokenizerModel) -> Result<Vec<TokenId>> {
    let mut out = Vec::new();
    if model.byte_level() {
        let mut mapped = String::new();
        for piece in split_pieces(text) {
            mapped.clear();
            mapped.extend(piece.bytes().map(bytemap::byte_to_char));
            encode_piece(&mapped, model, &mut out)?;
        }
    } else {
        for piece in pretokenize(text, model) {
            encode_piece(&piece, model, &mut out)?;
        }
    }
    Ok(out)
}

/// Encodes `text`: within each piece, the lowest-rank applicable merge is
/// applied (leftmost first) until none applies.
pub fn encode(text: &str, model: &TokenizerModel) -> Result<TokenSequence> {
    let token_ids = encode_ids(text, model)?;
    let surfaces = token_ids
        .iter()
        .map(|&id| model.token(id).unwrap_or_default().to_string())
        .collect();
    Ok(TokenSequence {
        token_ids,
        surfaces,
    })
}

/// Reassembles text from token surfaces.
///
/// Exact for byte-level models. For the other policies markers are turned back
/// into spaces (or removed), which is lossy for runs of whitespace.
pub fn decode(surfaces: &[String], model: &TokenizerModel) -> Result<String> {
    if model.byte_level() {
        let mut bytes = Vec::new();
        for s in surfaces {
            bytes.extend(bytemap::decode_bytes(s).ok_or_else(|| {
                Error::InvalidInput(format!("{s:?} is outside the byte alphabet"))
            })?);
        }
        return String::from_utf8(bytes)
            .map_err(|_| Error::InvalidInput("decoded bytes are not UTF-8".into()));
    }
    let mut out = String::new();
    for s in surfaces {
        match model.marker_policy() {
            MarkerPolicy::UnderscorePrefix => out.push_str(&s.replace(super::UNDERSCORE, " ")),
            MarkerPolicy::HashHashContinuation => match s.strip_prefix(super::CONTINUATION) {
                Some(tail) => out.push_str(tail),
                None => {
                    if !out.is_empty() {
                        out.push(' ');
                    }
                    out.push_str(s);
                }
            },
            _ => out.push_str(s),
        }
    }
    if model.marker_policy() == MarkerPolicy::UnderscorePrefix && out.starts_with(' ') {
        out.remove(0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bpe::model::BpeDefinition;

    fn model(vocab: &[&str], merges: &[(&str, &str)], byte_level: bool) -> TokenizerModel {
        TokenizerModel::new(BpeDefinition {
            name: "t".into(),
            vocab: vocab
                .iter()
                .enumerate()
                .map(|(i, t)| (t.to_string(), i as u32))
                .collect(),
            merges: merges
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            byte_level,
            marker_policy: if byte_level {
                MarkerPolicy::ByteLevelSpace
            } else {
                MarkerPolicy::None
            },
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn one_merge() {
        let m = model(&["a", "b", "ab"], &[("a", "b")], false);
        assert_eq!(encode("ab", &m).unwrap().surfaces, vec!["ab"]);
    }

    #[test]
    fn aab_hand_derived() {
        // (a)(a)(b): only (a,b) is a merge -> (a)(ab)
        let m = model(&["a", "b", "ab"], &[("a", "b")], false);
        assert_eq!(encode("aab", &m).unwrap().surfaces, vec!["a", "ab"]);
    }

    #[test]
    fn equal_rank_overlap_takes_leftmost() {
        let m = model(&["a", "aa"], &[("a", "a")], false);
        assert_eq!(encode("aaa", &m).unwrap().surfaces, vec!["aa", "a"]);
        assert_eq!(encode("aaaa", &m).unwrap().surfaces, vec!["aa", "aa"]);
    }

    #[test]
    fn rank_order_beats_position() {
        // (b,c) outranks (a,b), so "abc" -> a|bc
        let m = model(&["a", "b", "c", "bc", "ab"], &[("b", "c"), ("a", "b")], false);
        assert_eq!(encode("abc", &m).unwrap().surfaces, vec!["a", "bc"]);
    }

    #[test]
    fn unknown_symbol_without_unk_errors() {
        let m = model(&["a"], &[], false);
        assert!(matches!(encode("ax", &m), Err(Error::UnknownSymbol { .. })));
    }

    #[test]
    fn unknown_symbol_maps_to_unk() {
        let mut d = BpeDefinition {
            name: "t".into(),
            vocab: vec![("a".into(), 0), ("<unk>".into(), 1)],
            ..Default::default()
        };
        d.unk_token = Some("<unk>".into());
        let m = TokenizerModel::new(d).unwrap();
        assert_eq!(encode("ax", &m).unwrap().token_ids, vec![0, 1]);
    }

    #[test]
    fn byte_level_space_marker() {
        let m = model(&[], &[], true);
        let seq = encode("ev ler", &m).unwrap();
        assert_eq!(seq.surfaces, vec!["e", "v", "Ġ", "l", "e", "r"]);
        assert_eq!(decode(&seq.surfaces, &m).unwrap(), "ev ler");
    }

    #[test]
    fn empty_text() {
        let m = model(&[], &[], true);
        assert!(encode("", &m).unwrap().is_empty());
    }

    #[test]
    fn byte_fallback_for_any_character() {
        let m = model(&[], &[], true);
        let text = "İ😀\u{0}";
        let seq = encode(text, &m).unwrap();
        assert_eq!(seq.len(), text.len());
        assert_eq!(decode(&seq.surfaces, &m).unwrap(), text);
    }

    #[test]
    fn hashhash_continuation() {
        let m = TokenizerModel::new(BpeDefinition {
            name: "wp".into(),
            vocab: ["e", "v", "##v", "##l", "##e", "##r", "ev", "##le", "##ler", "evler"]
                .iter()
                .enumerate()
                .map(|(i, t)| (t.to_string(), i as u32))
                .collect(),
            merges: [("e", "##v"), ("##l", "##e"), ("##le", "##r"), ("ev", "##ler")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            marker_policy: MarkerPolicy::HashHashContinuation,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(encode("evler", &m).unwrap().surfaces, vec!["evler"]);
        assert_eq!(encode("evle", &m).unwrap().surfaces, vec!["ev", "##le"]);
        assert_eq!(decode(&encode("evle evler", &m).unwrap().surfaces, &m).unwrap(), "evle evler");
        // word-initial "l" is not in the vocabulary
        assert!(encode("ler", &m).is_err());
    }
}
