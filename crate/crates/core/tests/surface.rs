mod common;

use common::*;
use proptest::prelude::*;
use tokbench::bpe::bytemap::encode_bytes;
use tokbench::bpe::{encode, BpeDefinition, MarkerPolicy, TokenizerModel};
use tokbench::surface::{classify, normalize, turkish_fold, CharClass};

const POLICIES: [MarkerPolicy; 4] = [
    MarkerPolicy::ByteLevelSpace,
    MarkerPolicy::UnderscorePrefix,
    MarkerPolicy::HashHashContinuation,
    MarkerPolicy::None,
];

fn definition(vocab: Vec<String>, merges: &[(&str, &str)], policy: MarkerPolicy) -> TokenizerModel {
    TokenizerModel::new(BpeDefinition {
        name: format!("{policy}"),
        vocab: vocab.into_iter().enumerate().map(|(i, t)| (t, i as u32)).collect(),
        merges: merges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        marker_policy: policy,
        ..Default::default()
    })
    .unwrap()
}

fn underscore_model() -> TokenizerModel {
    let mut vocab: Vec<String> = "evlrdn".chars().map(String::from).collect();
    vocab.extend("evlrdn".chars().map(|c| format!("▁{c}")));
    vocab.extend(["▁ev", "le", "ler", "▁evler"].map(String::from));
    definition(vocab, &[("▁e", "v"), ("l", "e"), ("le", "r"), ("▁ev", "ler")], MarkerPolicy::UnderscorePrefix)
}

fn hashhash_model() -> TokenizerModel {
    let mut vocab: Vec<String> = "evlrdn".chars().map(String::from).collect();
    vocab.extend("evlrdn".chars().map(|c| format!("##{c}")));
    vocab.extend(["ev", "##le", "##ler", "evler"].map(String::from));
    definition(vocab, &[("e", "##v"), ("##l", "##e"), ("##le", "##r"), ("ev", "##ler")], MarkerPolicy::HashHashContinuation)
}

#[test]
fn normalization_examples() {
    let t = normalize("Ġler", MarkerPolicy::ByteLevelSpace);
    assert_eq!((t.clean_surface.as_str(), t.char_class), ("ler", CharClass::Alphabetic));
    assert_eq!(normalize("##imiz", MarkerPolicy::HashHashContinuation).clean_surface, "imiz");
    assert_eq!(normalize("Ãĩocuklar", MarkerPolicy::ByteLevelSpace).folded, "çocuklar");
    assert_eq!(turkish_fold("I"), "ı");
    assert_eq!(turkish_fold("İstanbul"), "istanbul");
    assert_eq!(turkish_fold("EVLER"), "evler");
}

#[test]
fn classes() {
    assert_eq!(classify(""), CharClass::Whitespace);
    assert_eq!(classify("2024"), CharClass::Numeric);
    assert_eq!(classify("?!"), CharClass::Punctuation);
    assert_eq!(classify("ev2"), CharClass::Mixed);
    assert_eq!(classify("ğüşöçı"), CharClass::Alphabetic);
}

#[test]
fn policy_models_segment_as_expected() {
    let u = underscore_model();
    assert_eq!(encode("evler evde", &u).unwrap().surfaces, vec!["▁evler", "▁ev", "d", "e"]);
    let h = hashhash_model();
    assert_eq!(encode("evler evde", &h).unwrap().surfaces, vec!["evler", "ev", "##d", "##e"]);
    for (m, text) in [(&u, "evler evde"), (&h, "evler evde")] {
        assert_eq!(tokbench::bpe::decode(&encode(text, m).unwrap().surfaces, m).unwrap(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn fold_is_idempotent(s in "\\PC{0,30}") {
        let once = turkish_fold(&s);
        prop_assert_eq!(turkish_fold(&once), once);
    }

    #[test]
    fn fold_changes_case_only(s in "\\PC{0,30}") {
        prop_assert_eq!(turkish_fold(&s).chars().count(), s.chars().count());
    }

    #[test]
    fn normalize_is_idempotent(raw in "(Ġ|▁|##|Ċ)?\\PC{0,12}", p in 0usize..4) {
        let policy = POLICIES[p];
        let first = normalize(&raw, policy);
        // A byte-level clean surface is plain text again; re-map it before
        // feeding it back in.
        let again = match policy {
            MarkerPolicy::ByteLevelSpace => encode_bytes(&first.clean_surface),
            _ => first.clean_surface.clone(),
        };
        let second = normalize(&again, policy);
        prop_assert_eq!(second.clean_surface, first.clean_surface.clone());
        prop_assert_eq!(first.folded, turkish_fold(&first.clean_surface));
        prop_assert_eq!(
            first.char_class == CharClass::Alphabetic,
            !first.clean_surface.is_empty() && first.clean_surface.chars().all(char::is_alphabetic)
        );
    }

    #[test]
    fn byte_level_pieces_are_substrings(text in "[a-zçğıöşüİI .,\n]{1,60}") {
        for s in &encode(&text, toy_model()).unwrap().surfaces {
            let c = normalize(s, MarkerPolicy::ByteLevelSpace);
            if c.char_class != CharClass::Mixed || !c.clean_surface.contains('\u{FFFD}') {
                prop_assert!(text.contains(&c.clean_surface), "{:?} not in {:?}", c.clean_surface, text);
            }
        }
    }

    #[test]
    fn underscore_and_hashhash_pieces_are_substrings(text in "[evlrdn]{1,8}( [evlrdn]{1,8}){0,4}") {
        for (model, policy) in [(underscore_model(), MarkerPolicy::UnderscorePrefix), (hashhash_model(), MarkerPolicy::HashHashContinuation)] {
            for s in &encode(&text, &model).unwrap().surfaces {
                let c = normalize(s, policy);
                prop_assert!(!c.clean_surface.contains('▁') && !c.clean_surface.starts_with("##"));
                prop_assert!(text.contains(&c.clean_surface));
            }
        }
    }
}
