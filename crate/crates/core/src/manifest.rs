//! Run manifests (TOML).
//!
//! ```toml
//! corpus = "corpus.jsonl"
//! tokenizers = [{ path = "tokenizer.json" }]
//! ```
//!
//! is a complete manifest. The long form:
//!
//! ```toml
//! corpus = { path = "corpus.txt", format = "text" }
//! morphology_resource = "lexicon.json"   # bundled lexicon when omitted
//!
//! [options]
//! repeats = 5
//! alpha_only = false
//! count_bound_morphemes_as_pure = false
//! output_dir = "out"
//!
//! [[tokenizers]]
//! name = "my-bpe"                # file stem when omitted
//! kind = "bpe-file"              # or "external-dump"; guessed from the extension
//! path = "my-bpe.json"
//! metadata = { mmlu_score = 70.1, params_billions = 8.0 }
//! ```
//!
//! Relative input paths are resolved against the manifest's directory; the
//! output directory is taken relative to the working directory.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bpe::DEFAULT_REPEATS;
use crate::corpus::CorpusFormat;
use crate::error::{Error, Result};
use crate::metrics::{EvalConfig, ScoreMetadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenizerKind {
    BpeFile,
    ExternalDump,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum CorpusSpec {
    Path(PathBuf),
    Full {
        path: PathBuf,
        #[serde(default)]
        format: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTokenizer {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    kind: Option<TokenizerKind>,
    path: PathBuf,
    #[serde(default)]
    metadata: ScoreMetadata,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    repeats: Option<u32>,
    alpha_only: Option<bool>,
    count_bound_morphemes_as_pure: Option<bool>,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    corpus: CorpusSpec,
    #[serde(default)]
    morphology_resource: Option<PathBuf>,
    #[serde(default)]
    tokenizers: Vec<RawTokenizer>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TokenizerSpec {
    pub name: String,
    pub kind: TokenizerKind,
    pub path: PathBuf,
    pub metadata: ScoreMetadata,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunOptions {
    pub repeats: u32,
    pub alpha_only: bool,
    pub count_bound_morphemes_as_pure: bool,
    pub output_dir: PathBuf,
}

impl RunOptions {
    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            alpha_only: self.alpha_only,
            count_bound_morphemes_as_pure: self.count_bound_morphemes_as_pure,
            repeats: self.repeats,
            ..Default::default()
        }
    }
}

/// A validated manifest with input paths resolved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub corpus_path: PathBuf,
    pub corpus_format: CorpusFormat,
    /// `None` selects the bundled lexicon.
    pub morphology_resource: Option<PathBuf>,
    pub tokenizers: Vec<TokenizerSpec>,
    pub options: RunOptions,
}

fn guess_format(path: &Path) -> CorpusFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("jsonl") | Some("json") => CorpusFormat::JsonlRecords,
        _ => CorpusFormat::PlainText,
    }
}

fn guess_kind(path: &Path) -> TokenizerKind {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => TokenizerKind::BpeFile,
        _ => TokenizerKind::ExternalDump,
    }
}

impl RunManifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    /// Parses and validates manifest text, resolving paths against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let raw: RawManifest =
            toml::from_str(text).map_err(|e| Error::Manifest(e.message().to_string()))?;
        let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
        let exists = |p: &Path, what: &str| -> Result<()> {
            if p.exists() {
                Ok(())
            } else {
                Err(Error::Manifest(format!("{what} {} does not exist", p.display())))
            }
        };

        let (corpus_path, format) = match raw.corpus {
            CorpusSpec::Path(p) => (resolve(&p), None),
            CorpusSpec::Full { path, format } => (resolve(&path), format),
        };
        exists(&corpus_path, "corpus")?;
        let corpus_format = match format {
            Some(f) => f.parse()?,
            None => guess_format(&corpus_path),
        };

        let morphology_resource = raw.morphology_resource.map(|p| resolve(&p));
        if let Some(p) = &morphology_resource {
            exists(p, "morphology resource")?;
        }

        if raw.tokenizers.is_empty() {
            return Err(Error::Manifest("at least one tokenizer is required".into()));
        }
        let mut names = BTreeSet::new();
        let mut tokenizers = Vec::with_capacity(raw.tokenizers.len());
        for t in raw.tokenizers {
            let path = resolve(&t.path);
            let name = match t.name {
                Some(n) if !n.trim().is_empty() => n,
                Some(_) => return Err(Error::Manifest("empty tokenizer name".into())),
                None => path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
            };
            if !names.insert(name.clone()) {
                return Err(Error::Manifest(format!("duplicate tokenizer name {name:?}")));
            }
            exists(&path, &format!("tokenizer {name}:"))?;
            tokenizers.push(TokenizerSpec {
                kind: t.kind.unwrap_or_else(|| guess_kind(&path)),
                name,
                path,
                metadata: t.metadata,
            });
        }

        let o = raw.options;
        let repeats = o.repeats.unwrap_or(DEFAULT_REPEATS);
        if repeats == 0 {
            return Err(Error::Manifest("options.repeats must be at least 1".into()));
        }
        let options = RunOptions {
            repeats,
            alpha_only: o.alpha_only.unwrap_or(false),
            count_bound_morphemes_as_pure: o.count_bound_morphemes_as_pure.unwrap_or(false),
            output_dir: o.output_dir.unwrap_or_else(|| PathBuf::from("tokbench-out")),
        };

        Ok(RunManifest {
            corpus_path,
            corpus_format,
            morphology_resource,
            tokenizers,
            options,
        })
    }
}
