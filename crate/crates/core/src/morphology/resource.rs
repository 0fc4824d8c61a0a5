use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::turkish_fold;

/// Word class of a root, as far as suffix licensing cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartOfSpeech {
    #[default]
    Noun,
    Verb,
    /// Takes both nominal and verbal suffixes (gül "rose" / gül- "laugh").
    Both,
    /// Conjunctions, numerals and other words that take no suffixes here.
    Particle,
}

impl PartOfSpeech {
    fn widen(self, other: PartOfSpeech) -> PartOfSpeech {
        use PartOfSpeech::*;
        match (self, other) {
            (a, b) if a == b => a,
            (Particle, x) | (x, Particle) => x,
            _ => Both,
        }
    }

    fn takes(self, slot: RootSlot) -> bool {
        match slot {
            RootSlot::Any => true,
            RootSlot::Noun => matches!(self, PartOfSpeech::Noun | PartOfSpeech::Both),
            RootSlot::Verb => matches!(self, PartOfSpeech::Verb | PartOfSpeech::Both),
        }
    }
}

fn default_true() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_default_pos(p: &PartOfSpeech) -> bool {
    *p == PartOfSpeech::Noun
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub form: String,
    /// Single-morpheme standalone word.
    #[serde(default = "default_true")]
    pub atomic: bool,
    #[serde(default, skip_serializing_if = "is_default_pos")]
    pub pos: PartOfSpeech,
    /// Stem variants used before vowel-initial suffixes (kitap → kitab).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alt: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuffixRule {
    pub id: String,
    pub allomorphs: Vec<String>,
    /// Rule ids allowed immediately before this suffix; `ROOT`, `ROOT:noun`
    /// and `ROOT:verb` stand for a bare root.
    pub follows: BTreeSet<String>,
    /// Allomorphs licensed only after a vowel-final stem (buffer consonants).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub after_vowel: Vec<String>,
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    pub harmony: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ResourceFile {
    version: String,
    roots: Vec<RootEntry>,
    suffixes: Vec<SuffixRule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum RootSlot {
    Any,
    Noun,
    Verb,
}

/// What may precede a suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Predecessor {
    Root(RootSlot),
    Rule(usize),
}

/// A root surface the trie can return: the entry index and whether the
/// surface is one of its alternate stems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct RootRef {
    pub entry: usize,
    pub alternate: bool,
}

#[derive(Debug, Clone, Default)]
struct TrieNode {
    children: Vec<(char, usize)>,
    roots: Vec<RootRef>,
}

/// Character trie over root surfaces, answering "which roots are prefixes of
/// this word".
#[derive(Debug, Clone)]
pub(crate) struct RootTrie {
    nodes: Vec<TrieNode>,
}

impl RootTrie {
    fn new() -> Self {
        RootTrie {
            nodes: vec![TrieNode::default()],
        }
    }

    fn insert(&mut self, key: &str, root: RootRef) {
        let mut node = 0;
        for c in key.chars() {
            node = match self.nodes[node].children.iter().find(|(k, _)| *k == c) {
                Some(&(_, next)) => next,
                None => {
                    let next = self.nodes.len();
                    self.nodes.push(TrieNode::default());
                    self.nodes[node].children.push((c, next));
                    next
                }
            };
        }
        self.nodes[node].roots.push(root);
    }

    /// Roots that are prefixes of `word`, as (byte length, roots) pairs,
    /// shortest first.
    pub fn prefixes<'a>(&'a self, word: &str) -> Vec<(usize, &'a [RootRef])> {
        let mut out = Vec::new();
        let mut node = 0;
        for (i, c) in word.char_indices() {
            match self.nodes[node].children.iter().find(|(k, _)| *k == c) {
                Some(&(_, next)) => node = next,
                None => break,
            }
            let roots = &self.nodes[node].roots;
            if !roots.is_empty() {
                out.push((i + c.len_utf8(), roots.as_slice()));
            }
        }
        out
    }
}

/// Root lexicon plus suffix inventory. Immutable after loading; every query
/// is a pure function of the resource.
#[derive(Debug, Clone)]
pub struct MorphologyResource {
    version: String,
    roots: Vec<RootEntry>,
    suffixes: Vec<SuffixRule>,
    pub(crate) trie: RootTrie,
    successors: HashMap<Predecessor, Vec<usize>>,
    bound_forms: BTreeSet<String>,
}

fn parse_follows(entry: &str, rule_ids: &HashMap<&str, usize>) -> Option<Predecessor> {
    match entry {
        "ROOT" => Some(Predecessor::Root(RootSlot::Any)),
        "ROOT:noun" => Some(Predecessor::Root(RootSlot::Noun)),
        "ROOT:verb" => Some(Predecessor::Root(RootSlot::Verb)),
        id => rule_ids.get(id).map(|&i| Predecessor::Rule(i)),
    }
}

fn check_form(what: &str, form: &str) -> Result<()> {
    if form.is_empty() {
        return Err(Error::InvalidResource(format!("empty {what}")));
    }
    if !form.chars().all(char::is_alphabetic) {
        return Err(Error::InvalidResource(format!("{what} {form:?} is not alphabetic")));
    }
    if turkish_fold(form) != form {
        return Err(Error::InvalidResource(format!("{what} {form:?} is not in folded form")));
    }
    Ok(())
}

impl MorphologyResource {
    pub fn new(
        version: impl Into<String>,
        roots: Vec<RootEntry>,
        suffixes: Vec<SuffixRule>,
    ) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidResource("no roots".into()));
        }

        let mut merged: Vec<RootEntry> = Vec::with_capacity(roots.len());
        let mut by_form: HashMap<String, usize> = HashMap::new();
        for root in roots {
            check_form("root", &root.form)?;
            for alt in &root.alt {
                check_form("alternate stem", alt)?;
            }
            match by_form.get(&root.form) {
                Some(&i) => {
                    let existing = &mut merged[i];
                    if existing.atomic != root.atomic {
                        return Err(Error::InvalidResource(format!(
                            "root {:?} listed with conflicting atomic flags",
                            root.form
                        )));
                    }
                    existing.pos = existing.pos.widen(root.pos);
                    for alt in root.alt {
                        if !existing.alt.contains(&alt) {
                            existing.alt.push(alt);
                        }
                    }
                }
                None => {
                    by_form.insert(root.form.clone(), merged.len());
                    merged.push(root);
                }
            }
        }

        let mut rule_ids: HashMap<&str, usize> = HashMap::new();
        for (i, rule) in suffixes.iter().enumerate() {
            if rule_ids.insert(rule.id.as_str(), i).is_some() {
                return Err(Error::InvalidResource(format!("duplicate suffix id {:?}", rule.id)));
            }
        }
        let mut successors: HashMap<Predecessor, Vec<usize>> = HashMap::new();
        let mut bound_forms = BTreeSet::new();
        for (i, rule) in suffixes.iter().enumerate() {
            if rule.allomorphs.is_empty() {
                return Err(Error::InvalidResource(format!("suffix {} has no allomorphs", rule.id)));
            }
            let mut seen = BTreeSet::new();
            for a in &rule.allomorphs {
                check_form(&format!("allomorph of {}", rule.id), a)?;
                if !seen.insert(a) {
                    return Err(Error::InvalidResource(format!(
                        "suffix {} lists allomorph {a:?} twice",
                        rule.id
                    )));
                }
                bound_forms.insert(a.clone());
            }
            if let Some(a) = rule.after_vowel.iter().find(|a| !rule.allomorphs.contains(a)) {
                return Err(Error::InvalidResource(format!(
                    "suffix {}: after_vowel entry {a:?} is not an allomorph",
                    rule.id
                )));
            }
            if rule.follows.is_empty() {
                return Err(Error::InvalidResource(format!("suffix {} has empty follows", rule.id)));
            }
            for f in &rule.follows {
                let pred = parse_follows(f, &rule_ids).ok_or_else(|| {
                    Error::InvalidResource(format!("suffix {}: unknown predecessor {f:?}", rule.id))
                })?;
                successors.entry(pred).or_default().push(i);
            }
        }

        let mut trie = RootTrie::new();
        for (entry, root) in merged.iter().enumerate() {
            trie.insert(
                &root.form,
                RootRef {
                    entry,
                    alternate: false,
                },
            );
            for alt in &root.alt {
                trie.insert(
                    alt,
                    RootRef {
                        entry,
                        alternate: true,
                    },
                );
            }
        }

        Ok(MorphologyResource {
            version: version.into(),
            roots: merged,
            suffixes,
            trie,
            successors,
            bound_forms,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ResourceFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidResource(e.to_string()))?;
        Self::new(file.version, file.roots, file.suffixes)
    }

    pub fn to_json(&self) -> String {
        let file = ResourceFile {
            version: self.version.clone(),
            roots: self.roots.clone(),
            suffixes: self.suffixes.clone(),
        };
        serde_json::to_string_pretty(&file).expect("resource serializes")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn roots(&self) -> &[RootEntry] {
        &self.roots
    }

    pub fn suffixes(&self) -> &[SuffixRule] {
        &self.suffixes
    }

    pub fn suffix(&self, id: &str) -> Option<&SuffixRule> {
        self.suffixes.iter().find(|r| r.id == id)
    }

    /// Whether `token` is exactly one allomorph of some suffix.
    pub fn is_bound_morpheme(&self, token: &str) -> bool {
        self.bound_forms.contains(token)
    }

    /// Suffix rules allowed right after a bare root of word class `pos`.
    pub(crate) fn rules_after_root(&self, pos: PartOfSpeech) -> Vec<usize> {
        let mut out: Vec<usize> = [RootSlot::Any, RootSlot::Noun, RootSlot::Verb]
            .into_iter()
            .filter(|&slot| pos.takes(slot))
            .filter_map(|slot| self.successors.get(&Predecessor::Root(slot)))
            .flatten()
            .copied()
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn rules_after_rule(&self, rule: usize) -> &[usize] {
        self.successors
            .get(&Predecessor::Rule(rule))
            .map(Vec::as_slice)
            .unwrap_or_default()
    }

    /// Can suffix `next` directly follow `prev` (`None` = a bare root of class `pos`)?
    pub fn licenses(&self, prev: Option<&str>, pos: PartOfSpeech, next: &str) -> bool {
        let Some(rule) = self.suffix(next) else { return false };
        rule.follows.iter().any(|f| match (f.as_str(), prev) {
            ("ROOT", None) => true,
            ("ROOT:noun", None) => pos.takes(RootSlot::Noun),
            ("ROOT:verb", None) => pos.takes(RootSlot::Verb),
            (id, Some(p)) => id == p,
            _ => false,
        })
    }
}

/// Loads a resource file and builds its lookup structures.
pub fn load_resource(path: impl AsRef<Path>) -> Result<MorphologyResource> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    MorphologyResource::from_json(&text).map_err(|e| match e {
        Error::InvalidResource(msg) => Error::InvalidResource(format!("{}: {msg}", path.display())),
        other => other,
    })
}
