//! Turkish vowel harmony and morpheme-boundary checks.

use super::resource::SuffixRule;

pub fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'ı' | 'i' | 'o' | 'ö' | 'u' | 'ü' | 'â' | 'î' | 'û')
}

fn base_vowel(c: char) -> char {
    match c {
        'â' => 'a',
        'î' => 'i',
        'û' => 'u',
        other => other,
    }
}

fn is_front(v: char) -> bool {
    matches!(v, 'e' | 'i' | 'ö' | 'ü')
}

fn is_rounded(v: char) -> bool {
    matches!(v, 'o' | 'ö' | 'u' | 'ü')
}

fn is_high(v: char) -> bool {
    matches!(v, 'ı' | 'i' | 'u' | 'ü')
}

pub fn last_vowel(s: &str) -> Option<char> {
    s.chars().rev().find(|&c| is_vowel(c)).map(base_vowel)
}

pub fn first_vowel(s: &str) -> Option<char> {
    s.chars().find(|&c| is_vowel(c)).map(base_vowel)
}

pub fn ends_with_vowel(s: &str) -> bool {
    s.chars().next_back().is_some_and(is_vowel)
}

pub fn starts_with_vowel(s: &str) -> bool {
    s.chars().next().is_some_and(is_vowel)
}

/// The consonants that trigger d→t and c→ç at a suffix boundary.
pub fn is_voiceless(c: char) -> bool {
    matches!(c, 'ç' | 'f' | 'h' | 'k' | 'p' | 's' | 'ş' | 't')
}

/// Does the suffix vowel agree with the last vowel of `stem`?
///
/// Two-way suffixes (a/e) agree in frontness; four-way suffixes (ı/i/u/ü) agree
/// in frontness and rounding. Suffixes whose first vowel is o/ö (the "-yor"
/// family) are invariant. A stem or allomorph without vowels passes.
pub fn check_vowel_harmony(stem: &str, allomorph: &str) -> bool {
    let (Some(sv), Some(av)) = (last_vowel(stem), first_vowel(allomorph)) else {
        return true;
    };
    if matches!(av, 'o' | 'ö') {
        return true;
    }
    if is_front(sv) != is_front(av) {
        return false;
    }
    !is_high(av) || is_rounded(sv) == is_rounded(av)
}

/// Which side of a voicing pair an allomorph is, if its rule has both sides:
/// `Some(true)` for the voiceless variant (t-, ç-), `Some(false)` for the voiced one.
fn voicing_variant(allomorph: &str, rule: &SuffixRule) -> Option<bool> {
    let mut chars = allomorph.chars();
    let first = chars.next()?;
    let rest = chars.as_str();
    let (partner, voiceless) = match first {
        't' => ('d', true),
        'd' => ('t', false),
        'ç' => ('c', true),
        'c' => ('ç', false),
        _ => return None,
    };
    let counterpart = format!("{partner}{rest}");
    rule.allomorphs.contains(&counterpart).then_some(voiceless)
}

/// Consonant-level constraints at the boundary between `stem` and an allomorph
/// of `rule`: no vowel-vowel hiatus, buffer-consonant variants only after a
/// vowel, and d/t, c/ç chosen by the voicing of the stem's last sound.
pub fn check_juncture(stem: &str, allomorph: &str, rule: &SuffixRule) -> bool {
    let stem_vowel_final = ends_with_vowel(stem);
    if stem_vowel_final && starts_with_vowel(allomorph) {
        return false;
    }
    if rule.after_vowel.iter().any(|a| a == allomorph) && !stem_vowel_final {
        return false;
    }
    match voicing_variant(allomorph, rule) {
        Some(voiceless) => {
            let last_voiceless = stem.chars().next_back().is_some_and(is_voiceless);
            voiceless == last_voiceless
        }
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(allomorphs: &[&str], after_vowel: &[&str]) -> SuffixRule {
        SuffixRule {
            id: "T".into(),
            allomorphs: allomorphs.iter().map(|s| s.to_string()).collect(),
            follows: ["ROOT".to_string()].into(),
            after_vowel: after_vowel.iter().map(|s| s.to_string()).collect(),
            harmony: true,
        }
    }

    #[test]
    fn front_back_harmony() {
        assert!(check_vowel_harmony("ev", "ler"));
        assert!(!check_vowel_harmony("ev", "lar"));
        assert!(check_vowel_harmony("bahçe", "de"));
        assert!(!check_vowel_harmony("bahçe", "da"));
        assert!(check_vowel_harmony("okul", "lar"));
    }

    #[test]
    fn four_way_harmony() {
        assert!(check_vowel_harmony("evler", "imiz"));
        assert!(!check_vowel_harmony("evler", "ımız"));
        assert!(check_vowel_harmony("okul", "umuz"));
        assert!(!check_vowel_harmony("okul", "ımız"));
        assert!(check_vowel_harmony("göz", "ün"));
        assert!(check_vowel_harmony("kız", "ın"));
    }

    #[test]
    fn vacuous_cases() {
        assert!(check_vowel_harmony("kr", "lar"));
        assert!(check_vowel_harmony("ev", "m"));
        assert!(check_vowel_harmony("gel", "iyor"));
        assert!(check_vowel_harmony("oku", "yor"));
    }

    #[test]
    fn voicing_assimilation() {
        let abl = rule(&["dan", "den", "tan", "ten"], &[]);
        assert!(check_juncture("ev", "den", &abl));
        assert!(!check_juncture("ev", "ten", &abl));
        assert!(check_juncture("kitap", "tan", &abl));
        assert!(!check_juncture("kitap", "dan", &abl));
    }

    #[test]
    fn hiatus_and_buffers() {
        let dat = rule(&["a", "e", "ya", "ye"], &["ya", "ye"]);
        assert!(check_juncture("ev", "e", &dat));
        assert!(!check_juncture("bahçe", "e", &dat));
        assert!(check_juncture("bahçe", "ye", &dat));
        assert!(!check_juncture("ev", "ye", &dat));
    }
}
