use serde::{Deserialize, Serialize};

use super::phonology::{check_juncture, check_vowel_harmony, starts_with_vowel};
use super::resource::{MorphologyResource, RootRef};

/// Longest suffix chain the search will build.
pub const MAX_CHAIN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morph {
    pub rule: String,
    pub allomorph: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parse {
    /// Root as it appears in the word (may be an alternate stem).
    pub root: String,
    /// Dictionary form of the root.
    pub lemma: String,
    pub root_atomic: bool,
    pub suffix_chain: Vec<Morph>,
    pub is_valid_word: bool,
    pub is_pure: bool,
}

impl Parse {
    /// "ev+ler+imiz+den"
    pub fn segmentation(&self) -> String {
        let mut out = self.root.clone();
        for m in &self.suffix_chain {
            out.push('+');
            out.push_str(&m.allomorph);
        }
        out
    }

    pub fn rule_ids(&self) -> Vec<&str> {
        self.suffix_chain.iter().map(|m| m.rule.as_str()).collect()
    }
}

struct Search<'a> {
    resource: &'a MorphologyResource,
    token: &'a str,
    root: RootRef,
    chain: Vec<(usize, &'a str)>,
    covers: Vec<Vec<(usize, &'a str)>>,
}

impl<'a> Search<'a> {
    fn extend(&mut self, pos: usize, prev: Option<usize>) {
        if pos == self.token.len() {
            self.covers.push(self.chain.clone());
            return;
        }
        if self.chain.len() >= MAX_CHAIN {
            return;
        }
        let resource = self.resource;
        let candidates: Vec<usize> = match prev {
            None => resource.rules_after_root(resource.roots()[self.root.entry].pos),
            Some(rule) => resource.rules_after_rule(rule).to_vec(),
        };
        let rest = &self.token[pos..];
        let stem = &self.token[..pos];
        for rule_idx in candidates {
            let rule = &resource.suffixes()[rule_idx];
            for allomorph in &rule.allomorphs {
                if !rest.starts_with(allomorph.as_str()) {
                    continue;
                }
                if rule.harmony && !check_vowel_harmony(stem, allomorph) {
                    continue;
                }
                if !check_juncture(stem, allomorph, rule) {
                    continue;
                }
                if self.chain.is_empty() && !stem_alternation_ok(resource, self.root, allomorph) {
                    continue;
                }
                self.chain.push((rule_idx, allomorph.as_str()));
                self.extend(pos + allomorph.len(), Some(rule_idx));
                self.chain.pop();
            }
        }
    }
}

/// Alternate stems (kitab-) appear only before a vowel-initial suffix, and a
/// root that has alternates must use one there.
pub(crate) fn stem_alternation_ok(
    resource: &MorphologyResource,
    root: RootRef,
    first_allomorph: &str,
) -> bool {
    let vowel_next = starts_with_vowel(first_allomorph);
    if root.alternate {
        vowel_next
    } else {
        !(vowel_next && !resource.roots()[root.entry].alt.is_empty())
    }
}

impl MorphologyResource {
    /// Best analysis of a folded, alphabetic token, or `None` if no root plus
    /// licensed suffix chain covers it exactly.
    ///
    /// Roots are tried longest first. Among covers with the same root length
    /// the shorter chain wins, then the lexicographically smaller rule-id
    /// sequence, then the dictionary form over an alternate stem.
    pub fn parse(&self, token: &str) -> Option<Parse> {
        if token.is_empty() || !token.chars().all(char::is_alphabetic) {
            return None;
        }
        let prefixes = self.trie.prefixes(token);
        for &(len, roots) in prefixes.iter().rev() {
            let mut candidates: Vec<(RootRef, Vec<(usize, &str)>)> = Vec::new();
            for &root in roots {
                let mut search = Search {
                    resource: self,
                    token,
                    root,
                    chain: Vec::new(),
                    covers: Vec::new(),
                };
                if len == token.len() {
                    if !root.alternate {
                        search.covers.push(Vec::new());
                    }
                } else {
                    search.extend(len, None);
                }
                candidates.extend(search.covers.into_iter().map(|c| (root, c)));
            }
            let rule_ids = |cover: &[(usize, &str)]| -> Vec<&str> {
                cover.iter().map(|&(r, _)| self.suffixes()[r].id.as_str()).collect()
            };
            let best = candidates.into_iter().min_by(|(ra, ca), (rb, cb)| {
                ca.len()
                    .cmp(&cb.len())
                    .then_with(|| rule_ids(ca).cmp(&rule_ids(cb)))
                    .then_with(|| ra.alternate.cmp(&rb.alternate))
                    .then_with(|| self.roots()[ra.entry].form.cmp(&self.roots()[rb.entry].form))
            });
            if let Some((root, cover)) = best {
                let entry = &self.roots()[root.entry];
                let suffix_chain: Vec<Morph> = cover
                    .iter()
                    .map(|&(r, a)| Morph {
                        rule: self.suffixes()[r].id.clone(),
                        allomorph: a.to_string(),
                    })
                    .collect();
                let is_pure = suffix_chain.is_empty() && entry.atomic && !root.alternate;
                return Some(Parse {
                    root: token[..len].to_string(),
                    lemma: entry.form.clone(),
                    root_atomic: entry.atomic,
                    suffix_chain,
                    is_valid_word: true,
                    is_pure,
                });
            }
        }
        None
    }

    /// A root alone or a root with a licensed suffix chain covers the token.
    pub fn is_valid_word(&self, token: &str) -> bool {
        self.parse(token).is_some()
    }

    /// Valid, with an atomic root and no suffixes.
    pub fn is_pure(&self, token: &str) -> bool {
        self.parse(token).is_some_and(|p| p.is_pure)
    }
}
