use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::bytemap;
use crate::error::{Error, Result};

pub type TokenId = u32;

/// How a tokenizer marks word boundaries inside its token surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkerPolicy {
    /// GPT-2 style: the space byte is part of the token and prints as 'Ġ'.
    ByteLevelSpace,
    /// SentencePiece style '▁' before word-initial pieces.
    UnderscorePrefix,
    /// WordPiece style "##" before word-internal pieces.
    HashHashContinuation,
    #[default]
    None,
}

impl FromStr for MarkerPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "byte-level" | "byte-level-space" | "bytelevel" => Ok(MarkerPolicy::ByteLevelSpace),
            "underscore" | "underscore-prefix" | "metaspace" => Ok(MarkerPolicy::UnderscorePrefix),
            "hashhash" | "hash-hash" | "hash-hash-continuation" | "wordpiece" => {
                Ok(MarkerPolicy::HashHashContinuation)
            }
            "none" => Ok(MarkerPolicy::None),
            other => Err(Error::InvalidInput(format!("unknown marker policy {other:?}"))),
        }
    }
}

impl fmt::Display for MarkerPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MarkerPolicy::ByteLevelSpace => "byte-level",
            MarkerPolicy::UnderscorePrefix => "underscore",
            MarkerPolicy::HashHashContinuation => "hashhash",
            MarkerPolicy::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct MergeEntry {
    pub rank: u32,
    pub result: TokenId,
}

/// A loaded BPE tokenizer. Immutable once built; share it freely across threads.
#[derive(Debug, Clone)]
pub struct TokenizerModel {
    name: String,
    vocab: HashMap<String, TokenId>,
    id_to_token: Vec<String>,
    merges: Vec<(String, String)>,
    merge_table: HashMap<(TokenId, TokenId), MergeEntry>,
    byte_level: bool,
    marker_policy: MarkerPolicy,
    unk_id: Option<TokenId>,
    ignore_merges: bool,
    byte_ids: Vec<TokenId>,
}

/// Raw pieces of a BPE definition, before validation.
#[derive(Debug, Clone, Default)]
pub struct BpeDefinition {
    pub name: String,
    pub vocab: Vec<(String, TokenId)>,
    pub merges: Vec<(String, String)>,
    pub byte_level: bool,
    pub marker_policy: MarkerPolicy,
    pub unk_token: Option<String>,
    pub ignore_merges: bool,
}

impl TokenizerModel {
    /// Validates a definition and builds the lookup tables.
    ///
    /// Byte-level models always end up with all 256 byte tokens; missing ones
    /// are appended after the highest id.
    pub fn new(def: BpeDefinition) -> Result<Self> {
        let BpeDefinition {
            name,
            vocab: entries,
            merges,
            byte_level,
            marker_policy,
            unk_token,
            ignore_merges,
        } = def;

        let mut id_to_token: Vec<Option<String>> = vec![None; entries.len()];
        let mut vocab = HashMap::with_capacity(entries.len() + 256);
        for (token, id) in entries {
            let slot = id_to_token.get_mut(id as usize).ok_or_else(|| {
                Error::InvalidModel(format!("token {token:?} has id {id}; ids must be dense"))
            })?;
            if let Some(prev) = slot {
                return Err(Error::InvalidModel(format!(
                    "duplicate id {id} for {prev:?} and {token:?}"
                )));
            }
            if vocab.insert(token.clone(), id).is_some() {
                return Err(Error::InvalidModel(format!("duplicate token {token:?}")));
            }
            *slot = Some(token);
        }
        let mut id_to_token: Vec<String> = id_to_token
            .into_iter()
            .map(|t| t.expect("dense ids checked above"))
            .collect();

        let mut byte_ids = Vec::new();
        if byte_level {
            for c in bytemap::alphabet() {
                let s = c.to_string();
                let id = match vocab.get(&s) {
                    Some(&id) => id,
                    None => {
                        let id = id_to_token.len() as TokenId;
                        vocab.insert(s.clone(), id);
                        id_to_token.push(s);
                        id
                    }
                };
                byte_ids.push(id);
            }
        }

        let unk_id = match unk_token {
            Some(unk) => Some(*vocab.get(&unk).ok_or_else(|| {
                Error::InvalidModel(format!("unknown token {unk:?} is not in the vocabulary"))
            })?),
            None => None,
        };

        let mut merge_table = HashMap::with_capacity(merges.len());
        for (rank, (left, right)) in merges.iter().enumerate() {
            let lookup = |piece: &str| {
                vocab.get(piece).copied().ok_or_else(|| {
                    Error::InvalidModel(format!(
                        "merge #{rank} ({left:?}, {right:?}): {piece:?} is not in the vocabulary"
                    ))
                })
            };
            let l = lookup(left)?;
            let r = lookup(right)?;
            let merged = merge_surface(left, right, marker_policy);
            let result = lookup(&merged)?;
            // The first (lowest-rank) occurrence of a pair wins.
            merge_table.entry((l, r)).or_insert(MergeEntry {
                rank: rank as u32,
                result,
            });
        }

        Ok(TokenizerModel {
            name,
            vocab,
            id_to_token,
            merges,
            merge_table,
            byte_level,
            marker_policy,
            unk_id,
            ignore_merges,
            byte_ids,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of distinct tokens, i.e. the Vocabulary Size metric.
    pub fn vocab_size(&self) -> usize {
        self.id_to_token.len()
    }

    pub fn byte_level(&self) -> bool {
        self.byte_level
    }

    pub fn marker_policy(&self) -> MarkerPolicy {
        self.marker_policy
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    pub fn token_id(&self, token: &str) -> Option<TokenId> {
        self.vocab.get(token).copied()
    }

    pub fn token(&self, id: TokenId) -> Option<&str> {
        self.id_to_token.get(id as usize).map(String::as_str)
    }

    pub fn unk_id(&self) -> Option<TokenId> {
        self.unk_id
    }

    pub(crate) fn ignore_merges(&self) -> bool {
        self.ignore_merges
    }

    pub(crate) fn byte_id(&self, b: u8) -> TokenId {
        self.byte_ids[b as usize]
    }

    pub(crate) fn merge(&self, left: TokenId, right: TokenId) -> Option<MergeEntry> {
        self.merge_table.get(&(left, right)).copied()
    }

    /// Rank of the merge producing `left`+`right`, if the model has one.
    pub fn merge_rank(&self, left: &str, right: &str) -> Option<u32> {
        let l = self.token_id(left)?;
        let r = self.token_id(right)?;
        self.merge(l, r).map(|m| m.rank)
    }
}

/// Surface produced by merging two pieces. Under "##" continuation the
/// right piece's prefix disappears.
pub fn merge_surface(left: &str, right: &str, policy: MarkerPolicy) -> String {
    match policy {
        MarkerPolicy::HashHashContinuation => {
            let tail = right.strip_prefix(super::CONTINUATION).unwrap_or(right);
            format!("{left}{tail}")
        }
        _ => format!("{left}{right}"),
    }
}

/// Loads a BPE definition in the `tokenizer.json` layout.
///
/// Accepts either a full tokenizer file (`{"model": {"type": "BPE", ...}}`) or
/// the bare model object. The model name defaults to the file stem.
pub fn load_bpe(path: impl AsRef<Path>) -> Result<TokenizerModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let def = parse_bpe_json(&text, &name).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse {
            path: path.to_path_buf(),
            message,
        },
        other => other,
    })?;
    TokenizerModel::new(def)
}

fn parse_error(message: impl Into<String>) -> Error {
    Error::Parse {
        path: Default::default(),
        message: message.into(),
    }
}

fn component_type(v: Option<&Value>) -> Vec<String> {
    let Some(v) = v else { return Vec::new() };
    let own = v.get("type").and_then(Value::as_str).map(str::to_string);
    let mut out: Vec<String> = own.into_iter().collect();
    for key in ["pretokenizers", "decoders"] {
        if let Some(list) = v.get(key).and_then(Value::as_array) {
            for item in list {
                out.extend(component_type(Some(item)));
            }
        }
    }
    out
}

pub fn parse_bpe_json(text: &str, default_name: &str) -> Result<BpeDefinition> {
    let root: Value = serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
    let model = root.get("model").unwrap_or(&root);
    if let Some(kind) = model.get("type").and_then(Value::as_str) {
        if kind != "BPE" {
            return Err(parse_error(format!("unsupported model type {kind:?}")));
        }
    }

    let vocab_obj = model
        .get("vocab")
        .and_then(Value::as_object)
        .ok_or_else(|| parse_error("missing model.vocab object"))?;
    let mut vocab = Vec::with_capacity(vocab_obj.len());
    for (token, id) in vocab_obj {
        let id = id
            .as_u64()
            .and_then(|n| TokenId::try_from(n).ok())
            .ok_or_else(|| parse_error(format!("token {token:?} has a non-integer id")))?;
        vocab.push((token.clone(), id));
    }

    let mut merges = Vec::new();
    for (i, m) in model
        .get("merges")
        .and_then(Value::as_array)
        .map(Vec::as_slice)
        .unwrap_or_default()
        .iter()
        .enumerate()
    {
        let pair = match m {
            Value::String(s) => s
                .split_once(' ')
                .map(|(a, b)| (a.to_string(), b.to_string())),
            Value::Array(parts) if parts.len() == 2 => {
                match (parts[0].as_str(), parts[1].as_str()) {
                    (Some(a), Some(b)) => Some((a.to_string(), b.to_string())),
                    _ => None,
                }
            }
            _ => None,
        };
        merges.push(pair.ok_or_else(|| parse_error(format!("merge #{i} is malformed: {m}")))?);
    }

    let mut types = component_type(root.get("pre_tokenizer"));
    types.extend(component_type(root.get("decoder")));
    let byte_level = types.iter().any(|t| t == "ByteLevel");
    let continuation = model.get("continuing_subword_prefix").and_then(Value::as_str);
    let marker_policy = if byte_level {
        MarkerPolicy::ByteLevelSpace
    } else if types.iter().any(|t| t == "Metaspace") {
        MarkerPolicy::UnderscorePrefix
    } else if continuation == Some(super::CONTINUATION) {
        MarkerPolicy::HashHashContinuation
    } else {
        MarkerPolicy::None
    };

    Ok(BpeDefinition {
        name: default_name.to_string(),
        vocab,
        merges,
        byte_level,
        marker_policy,
        unk_token: model
            .get("unk_token")
            .and_then(Value::as_str)
            .map(str::to_string),
        ignore_merges: model
            .get("ignore_merges")
            .and_then(Value::as_bool)
            .unwrap_or(false),
    })
}
