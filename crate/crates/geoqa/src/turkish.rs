//! Turkish-aware text helpers shared by the lexicon, gazetteer and the
//! query evaluator.
//!
//! Turkish has a dotted and a dotless I that break the usual Unicode
//! lowercase mapping: `'I'` lowers to `'ı'` and `'İ'` lowers to `'i'`.
//! Every key stored in the lexicalization table and the gazetteer goes
//! through [`fold`], and so does every lookup.

/// Lowercases a string with Turkish casing rules: `'I' -> 'ı'`,
/// `'İ' -> 'i'`, everything else through the standard mapping.
pub fn fold(s: &str) -> String {
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

/// Case fold for regex-style matching against IRI strings.
///
/// IRI local names are ASCII transliterations (`Izmir`, `Turkiye`,
/// `EgeBolgesi`) while filter literals carry proper Turkish spelling
/// (`İzmir`, `türkiye`). Matching therefore folds case the ASCII way
/// (`'I' -> 'i'`) and maps the Turkish-specific letters onto their
/// ASCII base character on both sides.
pub fn match_fold(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            'I' | 'İ' | 'ı' => out.push('i'),
            'Ç' | 'ç' => out.push('c'),
            'Ğ' | 'ğ' => out.push('g'),
            'Ö' | 'ö' => out.push('o'),
            'Ş' | 'ş' => out.push('s'),
            'Ü' | 'ü' => out.push('u'),
            _ => out.extend(c.to_lowercase()),
        }
    }
    out
}

/// Uppercases only the first character, Turkish-aware (`'i' -> 'İ'`,
/// `'ı' -> 'I'`). Used to restore surface capitalization on filter
/// literals ("ankara" -> "Ankara", "izmir" -> "İzmir").
pub fn capitalize_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        None => String::new(),
        Some('i') => format!("İ{}", chars.as_str()),
        Some('ı') => format!("I{}", chars.as_str()),
        Some(c) => format!("{}{}", c.to_uppercase(), chars.as_str()),
    }
}

/// True when the first character of `s` is uppercase.
pub fn starts_uppercase(s: &str) -> bool {
    s.chars().next().map(|c| c.is_uppercase()).unwrap_or(false)
}

pub const VOWELS: &[char] = &['a', 'e', 'ı', 'i', 'o', 'ö', 'u', 'ü'];

pub fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_turkish_dotted_and_dotless() {
        assert_eq!(fold("Iğdır"), "ığdır");
        assert_eq!(fold("İzmir"), "izmir");
        assert_eq!(fold("ANKARA"), "ankara");
        assert_eq!(fold("Bölgesi"), "bölgesi");
    }

    #[test]
    fn match_fold_reaches_ascii() {
        assert_eq!(match_fold("Izmir"), "izmir");
        assert_eq!(match_fold("İzmir"), "izmir");
        assert_eq!(match_fold("Türkiye"), "turkiye");
        assert_eq!(match_fold("Gökçeada"), "gokceada");
        assert_eq!(match_fold("Kırıkkale"), "kirikkale");
    }

    #[test]
    fn capitalizes_first_letter() {
        assert_eq!(capitalize_first("ankara"), "Ankara");
        assert_eq!(capitalize_first("izmir"), "İzmir");
        assert_eq!(capitalize_first("ığdır"), "Iğdır");
        assert_eq!(capitalize_first(""), "");
    }
}
