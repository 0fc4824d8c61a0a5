mod common;

use common::*;
use proptest::prelude::*;
use tokbench::corpus::corpus_text;
use tokbench::morphology::phonology::{first_vowel, last_vowel};
use tokbench::morphology::{
    bundled_resource, check_vowel_harmony, load_resource, MorphologyResource, PartOfSpeech, RootEntry, SuffixRule,
};
use tokbench::surface::turkish_fold;

const EXAMPLE_WORDS: &[&str] = &[
    "evlerimizden", "ev", "ler", "imiz", "den", "e", "vl", "er", "imizd", "en", "evler", "evlerd",
    "çocuklar", "bahçede", "oynayacak", "ve", "gülecek", "bahçe", "de", "ecek", "gül",
    "hangi", "organ", "karaciğerin", "görevini", "destekler", "kalp", "akciğer", "böbrek", "dalak",
];

fn res() -> &'static MorphologyResource {
    static RES: std::sync::OnceLock<MorphologyResource> = std::sync::OnceLock::new();
    RES.get_or_init(bundled_resource)
}

#[test]
fn golden_set() {
    let r = res();
    let p = r.parse("evlerimizden").unwrap();
    assert_eq!(p.root, "ev");
    assert_eq!(p.rule_ids(), vec!["PLURAL", "POSS1PL", "ABLATIVE"]);
    assert_eq!(p.segmentation(), "ev+ler+imiz+den");
    assert!(p.is_valid_word && !p.is_pure);

    for w in ["evler", "çocuklar", "oynayacak", "gülecek", "bahçede", "karaciğerin", "destekler"] {
        assert!(r.is_valid_word(w), "{w} should be valid");
        assert!(!r.is_pure(w), "{w} should not be pure");
    }
    for w in ["bahçe", "gül", "ve", "ev", "kalp", "organ"] {
        assert!(r.is_pure(w), "{w} should be pure");
    }
    for w in ["imiz", "den", "ecek", "evlerd", "de", "vl", "imizd", "xyzzy"] {
        assert!(r.parse(w).is_none(), "{w} should not parse");
    }
    assert!(r.is_valid_word(&turkish_fold("Çocuklar")));
}

#[test]
fn vowel_harmony_examples() {
    assert!(check_vowel_harmony("ev", "ler"));
    assert!(!check_vowel_harmony("ev", "lar"));
    assert!(check_vowel_harmony("bahçe", "de"));
    assert!(!check_vowel_harmony("bahçe", "da"));
    assert!(check_vowel_harmony("okul", "lar"));
    assert!(check_vowel_harmony("st", "lar"));
}

#[test]
fn bundled_file_loads_and_round_trips() {
    let r = load_resource(data("morphology/tr_mini.json")).unwrap();
    assert!(r.roots().len() >= 300);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("copy.json");
    r.save(&p).unwrap();
    let back = load_resource(&p).unwrap();
    assert_eq!(back.roots(), r.roots());
    assert_eq!(back.suffixes(), r.suffixes());
    assert_eq!(back.version(), r.version());
}

fn root(form: &str, atomic: bool) -> RootEntry {
    RootEntry { form: form.into(), atomic, pos: PartOfSpeech::Noun, alt: vec![] }
}

fn plural(allomorphs: &[&str]) -> SuffixRule {
    SuffixRule {
        id: "PLURAL".into(),
        allomorphs: allomorphs.iter().map(|s| s.to_string()).collect(),
        follows: ["ROOT".to_string()].into(),
        after_vowel: vec![],
        harmony: true,
    }
}

#[test]
fn resource_validation() {
    assert!(MorphologyResource::new("v", vec![], vec![plural(&["lar"])]).is_err());
    assert!(MorphologyResource::new("v", vec![root("ev", true), root("ev", false)], vec![]).is_err());
    assert!(MorphologyResource::new("v", vec![root("ev", true)], vec![plural(&["lar", ""])]).is_err());
    assert!(MorphologyResource::new("v", vec![root("ev", true)], vec![plural(&[])]).is_err());
    assert!(MorphologyResource::new("v", vec![root("ev", true)], vec![plural(&["lar", "lar"])]).is_err());
    assert!(MorphologyResource::new("v", vec![root("Ev", true)], vec![]).is_err());
    let mut orphan = plural(&["lar"]);
    orphan.follows.clear();
    assert!(MorphologyResource::new("v", vec![root("ev", true)], vec![orphan]).is_err());
    // identical duplicates merge
    let ok = MorphologyResource::new("v", vec![root("ev", true), root("ev", true)], vec![]).unwrap();
    assert_eq!(ok.roots().len(), 1);
}

fn check_parse_invariants(r: &MorphologyResource, w: &str) {
    if let Some(p) = r.parse(w) {
        assert!(p.is_valid_word);
        assert_eq!(p.segmentation().replace('+', ""), w, "soundness for {w}");
        if p.is_pure {
            assert!(p.suffix_chain.is_empty() && p.root_atomic, "{w}");
        }
        let mut stem = p.root.clone();
        for m in &p.suffix_chain {
            let rule = r.suffix(&m.rule).unwrap();
            if rule.harmony {
                assert!(check_vowel_harmony(&stem, &m.allomorph), "{w}: {stem}+{}", m.allomorph);
            }
            stem.push_str(&m.allomorph);
        }
    }
    assert!(!r.is_pure(w) || r.is_valid_word(w));
}

#[test]
fn example_words_match_brute_force() {
    let r = res();
    for w in EXAMPLE_WORDS {
        let (valid, pure) = brute_force_analysis(r, w, 4);
        assert_eq!(r.is_valid_word(w), valid, "validity of {w}");
        assert_eq!(r.is_pure(w), pure, "purity of {w}");
        check_parse_invariants(r, w);
    }
}

#[test]
fn corpus_words_match_brute_force() {
    let r = res();
    let mut words = std::collections::BTreeSet::new();
    for rec in mini_corpus() {
        for w in corpus_text(&rec).split(|c: char| !c.is_alphabetic()) {
            if !w.is_empty() {
                words.insert(turkish_fold(w));
            }
        }
    }
    assert!(words.len() > 300);
    let mut valid_count = 0;
    for w in &words {
        let (valid, pure) = brute_force_analysis(r, w, 4);
        assert_eq!(r.is_valid_word(w), valid, "validity of {w}");
        assert_eq!(r.is_pure(w), pure, "purity of {w}");
        check_parse_invariants(r, w);
        valid_count += valid as usize;
    }
    // the corpus is written from the lexicon, so most words parse
    assert!(valid_count * 10 >= words.len() * 8, "{valid_count}/{}", words.len());
}

fn composed_token() -> impl Strategy<Value = String> {
    let r = res();
    let roots: Vec<String> = r
        .roots()
        .iter()
        .flat_map(|e| std::iter::once(e.form.clone()).chain(e.alt.iter().cloned()))
        .collect();
    let allomorphs: Vec<String> = r.suffixes().iter().flat_map(|s| s.allomorphs.clone()).collect();
    (prop::sample::select(roots), prop::collection::vec(prop::sample::select(allomorphs), 0..4))
        .prop_map(|(root, sfx)| root + &sfx.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn composed_tokens_match_brute_force(w in composed_token()) {
        let r = res();
        let (valid, pure) = brute_force_analysis(r, &w, 4);
        prop_assert_eq!(r.is_valid_word(&w), valid, "validity of {}", w);
        prop_assert_eq!(r.is_pure(&w), pure, "purity of {}", w);
        check_parse_invariants(r, &w);
    }

    #[test]
    fn random_strings_obey_invariants(w in "[a-zçğıöşü]{1,12}") {
        let r = res();
        let (valid, pure) = brute_force_analysis(r, &w, 4);
        prop_assert_eq!(r.is_valid_word(&w), valid);
        prop_assert_eq!(r.is_pure(&w), pure);
        check_parse_invariants(r, &w);
    }

    #[test]
    fn harmony_is_vacuous_without_vowels(stem in "[bcdfgh]{1,4}", a in "[a-zçğıöşü]{1,4}") {
        prop_assert!(check_vowel_harmony(&stem, &a));
    }

    #[test]
    fn harmony_depends_only_on_vowels(stem in "[a-zçğıöşü]{1,8}", a in "[a-zçğıöşü]{1,4}") {
        let same = last_vowel(&stem).map(|v| format!("b{v}"));
        if let (Some(s), Some(_)) = (same, first_vowel(&a)) {
            prop_assert_eq!(check_vowel_harmony(&stem, &a), check_vowel_harmony(&s, &a));
        }
    }
}
