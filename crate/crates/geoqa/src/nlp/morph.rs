//! Morphological analysis by recursive affix stripping against a domain
//! lexicon, plus the deterministic disambiguator.
//!
//! Suffixes are matched right to left through the nominal chain
//! `stem + plural + possessive + case (+ relativizer -ki, + copula)`;
//! each suffix lists its harmonic allomorphs explicitly. A candidate
//! segmentation is accepted only when the remaining stem is a lexicon
//! entry (after undoing final devoicing `uzunluğ- -> uzunluk` and vowel
//! drop `şehr- -> şehir`), or when an apostrophe marks the stem as a
//! proper name.

use std::collections::HashMap;
use std::fmt;

use crate::turkish;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Postp,
    Punc,
    Num,
    Conj,
    Det,
}

impl Pos {
    pub fn name(&self) -> &'static str {
        match self {
            Pos::Noun => "Noun",
            Pos::Verb => "Verb",
            Pos::Adj => "Adj",
            Pos::Adv => "Adv",
            Pos::Pron => "Pron",
            Pos::Postp => "Postp",
            Pos::Punc => "Punc",
            Pos::Num => "Num",
            Pos::Conj => "Conj",
            Pos::Det => "Det",
        }
    }

    pub fn from_name(s: &str) -> Option<Pos> {
        Some(match s {
            "Noun" => Pos::Noun,
            "Verb" => Pos::Verb,
            "Adj" => Pos::Adj,
            "Adv" => Pos::Adv,
            "Pron" => Pos::Pron,
            "Postp" => Pos::Postp,
            "Punc" => Pos::Punc,
            "Num" => Pos::Num,
            "Conj" => Pos::Conj,
            "Det" => Pos::Det,
            _ => return None,
        })
    }

    /// Disambiguation priority: Noun > Adj > Verb > everything else.
    fn priority(&self) -> u8 {
        match self {
            Pos::Noun => 0,
            Pos::Adj => 1,
            Pos::Verb => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One reading of a token: lemma, root POS, the root segment's feature
/// tags, and any `^DB` derivation segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphAnalysis {
    pub lemma: String,
    pub pos: Pos,
    pub features: Vec<String>,
    pub derivations: Vec<(Pos, Vec<String>)>,
    folded: String,
}

impl MorphAnalysis {
    pub fn new(lemma: &str, pos: Pos, features: Vec<&str>) -> Self {
        MorphAnalysis {
            lemma: lemma.to_string(),
            pos,
            features: features.into_iter().map(|s| s.to_string()).collect(),
            derivations: Vec::new(),
            folded: turkish::fold(lemma),
        }
    }

    pub fn with_derivation(mut self, pos: Pos, features: Vec<&str>) -> Self {
        self.derivations
            .push((pos, features.into_iter().map(|s| s.to_string()).collect()));
        self
    }

    /// Lemma folded with Turkish casing, for lexicon and gazetteer lookups.
    pub fn folded_lemma(&self) -> &str {
        &self.folded
    }

    /// `A3sg|P3sg|Loc^DB|Adj|Rel` — feature tags joined by `|` with `^DB`
    /// derivation boundaries, `_` when there are none.
    pub fn feats_string(&self) -> String {
        let mut out = self.features.join("|");
        for (pos, feats) in &self.derivations {
            out.push_str("^DB|");
            out.push_str(pos.name());
            if !feats.is_empty() {
                out.push('|');
                out.push_str(&feats.join("|"));
            }
        }
        if out.is_empty() {
            "_".to_string()
        } else {
            out
        }
    }

    pub fn has_root_feature(&self, tag: &str) -> bool {
        self.features.iter().any(|f| f == tag)
    }

    pub fn has_any_feature(&self, tag: &str) -> bool {
        self.has_root_feature(tag)
            || self
                .derivations
                .iter()
                .any(|(_, fs)| fs.iter().any(|f| f == tag))
    }

    /// Grammatical case of the nominal chain (`Nom` when uninflected).
    pub fn case(&self) -> Option<&'static str> {
        ["Nom", "Acc", "Dat", "Loc", "Abl", "Gen"]
            .into_iter()
            .find(|tag| self.has_root_feature(tag))
    }

    pub fn is_copular(&self) -> bool {
        self.has_any_feature("Cop")
    }
}

/// Domain lemma lexicon loaded from a `lemma<TAB>POS` TSV. Entry order
/// is preserved; the QT2 featurizer indexes lemmas by position.
#[derive(Debug, Clone, Default)]
pub struct MorphLexicon {
    entries: Vec<(String, Pos)>,
    by_lemma: HashMap<String, Vec<Pos>>,
    index: HashMap<String, usize>,
}

impl MorphLexicon {
    pub fn parse(tsv: &str) -> Result<Self, String> {
        let mut lex = MorphLexicon::default();
        for (idx, raw) in tsv.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lemma, pos) = line
                .split_once('\t')
                .ok_or_else(|| format!("lexicon line {}: expected lemma<TAB>POS", idx + 1))?;
            let pos = Pos::from_name(pos.trim())
                .ok_or_else(|| format!("lexicon line {}: unknown POS `{}`", idx + 1, pos))?;
            lex.insert(lemma.trim(), pos);
        }
        Ok(lex)
    }

    pub fn insert(&mut self, lemma: &str, pos: Pos) {
        let folded = turkish::fold(lemma);
        self.index.entry(folded.clone()).or_insert(self.entries.len());
        self.entries.push((folded.clone(), pos));
        self.by_lemma.entry(folded).or_default().push(pos);
    }

    pub fn pos_of(&self, folded_lemma: &str) -> &[Pos] {
        self.by_lemma
            .get(folded_lemma)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn contains(&self, folded_lemma: &str) -> bool {
        self.by_lemma.contains_key(folded_lemma)
    }

    /// Position of the lemma's first entry, for bag-of-lemmas features.
    pub fn lemma_index(&self, folded_lemma: &str) -> Option<usize> {
        self.index.get(folded_lemma).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

struct Suffix {
    feature: &'static str,
    allomorphs: &'static [&'static str],
}

const CASES: &[Suffix] = &[
    Suffix {
        feature: "Acc",
        allomorphs: &["yi", "yı", "yu", "yü", "ni", "nı", "nu", "nü", "i", "ı", "u", "ü"],
    },
    Suffix {
        feature: "Dat",
        allomorphs: &["ye", "ya", "ne", "na", "e", "a"],
    },
    Suffix {
        feature: "Loc",
        allomorphs: &["nde", "nda", "de", "da", "te", "ta"],
    },
    Suffix {
        feature: "Abl",
        allomorphs: &["nden", "ndan", "den", "dan", "ten", "tan"],
    },
    Suffix {
        feature: "Gen",
        allomorphs: &["nin", "nın", "nun", "nün", "in", "ın", "un", "ün"],
    },
];

const POSSESSIVE: &[&str] = &["si", "sı", "su", "sü", "i", "ı", "u", "ü"];
const PLURAL: &[&str] = &["ler", "lar"];
const COPULA: &[&str] = &["dir", "dır", "dur", "dür", "tir", "tır", "tur", "tür"];
const AORIST: &[&str] = &["ir", "ır", "ur", "ür", "er", "ar", "r"];
const PRES_PART: &[&str] = &["yen", "yan", "en", "an"];

/// Partially stripped nominal chain, recorded right to left.
#[derive(Debug, Clone, Default)]
struct NominalChain {
    copula: bool,
    relative: bool,
    case: Option<&'static str>,
    possessive: bool,
    plural: bool,
}

impl NominalChain {
    fn is_bare(&self) -> bool {
        !self.copula && !self.relative && self.case.is_none() && !self.possessive && !self.plural
    }

    fn root_features(&self, proper: bool) -> Vec<String> {
        let mut feats = Vec::new();
        if proper {
            feats.push("Prop".to_string());
        }
        feats.push(if self.plural { "A3pl" } else { "A3sg" }.to_string());
        feats.push(if self.possessive { "P3sg" } else { "Pnon" }.to_string());
        feats.push(self.case.unwrap_or("Nom").to_string());
        feats
    }

    fn apply(&self, mut analysis: MorphAnalysis) -> MorphAnalysis {
        if self.relative {
            analysis = analysis.with_derivation(Pos::Adj, vec!["Rel"]);
        }
        if self.copula {
            analysis = analysis.with_derivation(Pos::Verb, vec!["Zero", "Pres", "A3sg", "Cop"]);
        }
        analysis
    }
}

fn full_form(folded: &str) -> Option<MorphAnalysis> {
    for (q, person, feats) in [
        ("", "", vec!["Ques"]),
        ("sin", "A2sg", vec!["Ques", "Pres", "A2sg"]),
        ("siniz", "A2pl", vec!["Ques", "Pres", "A2pl"]),
        ("dir", "A3sg", vec!["Ques", "Pres", "A3sg"]),
    ] {
        let _ = person;
        for stem in ["mi", "mı", "mu", "mü"] {
            let expected = match q {
                "" => stem.to_string(),
                "sin" => format!("{stem}{}", harmonize(stem, &["sin", "sın", "sun", "sün"])),
                "siniz" => format!("{stem}{}", harmonize(stem, &["siniz", "sınız", "sunuz", "sünüz"])),
                _ => format!("{stem}{}", harmonize(stem, &["dir", "dır", "dur", "dür"])),
            };
            if folded == expected {
                return Some(MorphAnalysis::new("mi", Pos::Postp, feats.clone()));
            }
        }
    }
    match folded {
        "ne" => Some(MorphAnalysis::new(
            "ne",
            Pos::Pron,
            vec!["Ques", "A3sg", "Pnon", "Nom"],
        )),
        "nedir" => Some(
            MorphAnalysis::new("ne", Pos::Pron, vec!["Ques", "A3sg", "Pnon", "Nom"])
                .with_derivation(Pos::Verb, vec!["Zero", "Pres", "A3sg", "Cop"]),
        ),
        "kadardır" => Some(
            MorphAnalysis::new("kadar", Pos::Postp, vec!["PCNom"])
                .with_derivation(Pos::Noun, vec!["Zero", "A3sg", "Pnon", "Nom"])
                .with_derivation(Pos::Verb, vec!["Zero", "Pres", "A3sg", "Cop"]),
        ),
        "kaçtır" => Some(
            MorphAnalysis::new("kaç", Pos::Adj, vec!["Ques"])
                .with_derivation(Pos::Verb, vec!["Zero", "Pres", "A3sg", "Cop"]),
        ),
        "hangisi" => Some(MorphAnalysis::new(
            "hangi",
            Pos::Pron,
            vec!["Ques", "A3sg", "P3sg", "Nom"],
        )),
        "hangisidir" => Some(
            MorphAnalysis::new("hangi", Pos::Pron, vec!["Ques", "A3sg", "P3sg", "Nom"])
                .with_derivation(Pos::Verb, vec!["Zero", "Pres", "A3sg", "Cop"]),
        ),
        "nasıldır" => Some(
            MorphAnalysis::new("nasıl", Pos::Adj, vec!["Ques"])
                .with_derivation(Pos::Verb, vec!["Zero", "Pres", "A3sg", "Cop"]),
        ),
        "vardır" => Some(
            MorphAnalysis::new("var", Pos::Adj, vec![])
                .with_derivation(Pos::Verb, vec!["Zero", "Pres", "A3sg", "Cop"]),
        ),
        "yoktur" => Some(
            MorphAnalysis::new("yok", Pos::Adj, vec![])
                .with_derivation(Pos::Verb, vec!["Zero", "Pres", "A3sg", "Cop"]),
        ),
        _ => None,
    }
}

/// Picks the allomorph from `set` whose last vowel harmonizes with the
/// stem's last vowel. Only used for the question-particle table.
fn harmonize<'a>(stem: &str, set: &[&'a str]) -> &'a str {
    let last_vowel = stem.chars().rev().find(|c| turkish::is_vowel(*c));
    let idx = match last_vowel {
        Some('i' | 'e') => 0,
        Some('ı' | 'a') => 1,
        Some('u' | 'o') => 2,
        _ => 3,
    };
    set[idx]
}

/// All accepted readings of a surface token.
pub fn analyze(surface: &str, lexicon: &MorphLexicon) -> Vec<MorphAnalysis> {
    if surface.chars().all(|c| c.is_ascii_punctuation()) {
        return vec![MorphAnalysis::new(surface, Pos::Punc, vec![])];
    }
    if surface.chars().all(|c| c.is_ascii_digit()) {
        return vec![MorphAnalysis::new(surface, Pos::Num, vec![])];
    }

    let folded = turkish::fold(surface);
    if let Some(a) = full_form(&folded) {
        return vec![a];
    }

    // apostrophe marks a proper-noun stem boundary
    let (folded, apostrophe_stem) = match surface.split_once('\'') {
        Some((stem, _)) => (
            folded.replace('\'', ""),
            Some((turkish::fold(stem), stem.to_string())),
        ),
        None => (folded, None),
    };

    let mut out = Vec::new();
    strip_nominal(
        &folded,
        apostrophe_stem.as_ref(),
        lexicon,
        NominalChain::default(),
        State::Copula,
        &mut out,
    );
    strip_verbal(&folded, lexicon, &mut out);

    // the proper-noun readings from the apostrophe boundary are a
    // fallback: lexicon-validated stems win
    if out.iter().any(|a| !a.has_root_feature("Prop")) {
        out.retain(|a| !a.has_root_feature("Prop"));
    }

    if out.is_empty() {
        // out-of-lexicon token: a proper noun in this closed domain
        out.push(MorphAnalysis::new(
            surface,
            Pos::Noun,
            vec!["Prop", "A3sg", "Pnon", "Nom"],
        ));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum State {
    Copula,
    Relative,
    Case,
    Possessive,
    Plural,
    Stem,
}

fn next_state(s: State) -> State {
    match s {
        State::Copula => State::Relative,
        State::Relative => State::Case,
        State::Case => State::Possessive,
        State::Possessive => State::Plural,
        State::Plural => State::Stem,
        State::Stem => State::Stem,
    }
}

fn strip_nominal(
    rest: &str,
    apostrophe: Option<&(String, String)>,
    lexicon: &MorphLexicon,
    chain: NominalChain,
    state: State,
    out: &mut Vec<MorphAnalysis>,
) {
    // accept the current remainder as a stem
    accept_stem(rest, apostrophe, lexicon, &chain, out);

    if state == State::Stem || rest.chars().count() < 2 {
        return;
    }

    // try the current state and everything further left
    let mut s = state;
    loop {
        match s {
            State::Copula => {
                for allo in COPULA {
                    if let Some(stem) = rest.strip_suffix(allo) {
                        let mut c = chain.clone();
                        c.copula = true;
                        strip_nominal(stem, apostrophe, lexicon, c, State::Relative, out);
                    }
                }
            }
            State::Relative => {
                if let Some(stem) = rest.strip_suffix("ki") {
                    // -ki rides on a locative or genitive
                    for case in CASES.iter().filter(|c| c.feature == "Loc" || c.feature == "Gen") {
                        for allo in case.allomorphs {
                            if let Some(stem2) = stem.strip_suffix(allo) {
                                let mut c = chain.clone();
                                c.relative = true;
                                c.case = Some(case.feature);
                                strip_nominal(
                                    stem2,
                                    apostrophe,
                                    lexicon,
                                    c,
                                    State::Possessive,
                                    out,
                                );
                            }
                        }
                    }
                }
            }
            State::Case => {
                for case in CASES {
                    for allo in case.allomorphs {
                        if let Some(stem) = rest.strip_suffix(allo) {
                            let mut c = chain.clone();
                            c.case = Some(case.feature);
                            strip_nominal(
                                stem,
                                apostrophe,
                                lexicon,
                                c,
                                State::Possessive,
                                out,
                            );
                        }
                    }
                }
            }
            State::Possessive => {
                for allo in POSSESSIVE {
                    if let Some(stem) = rest.strip_suffix(allo) {
                        let mut c = chain.clone();
                        c.possessive = true;
                        strip_nominal(stem, apostrophe, lexicon, c, State::Plural, out);
                    }
                }
            }
            State::Plural => {
                for allo in PLURAL {
                    if let Some(stem) = rest.strip_suffix(allo) {
                        let mut c = chain.clone();
                        c.plural = true;
                        strip_nominal(stem, apostrophe, lexicon, c, State::Stem, out);
                    }
                }
            }
            State::Stem => break,
        }
        s = next_state(s);
        if s == State::Stem {
            break;
        }
    }
}

fn accept_stem(
    stem: &str,
    apostrophe: Option<&(String, String)>,
    lexicon: &MorphLexicon,
    chain: &NominalChain,
    out: &mut Vec<MorphAnalysis>,
) {
    if stem.is_empty() {
        return;
    }
    let stripped_something = !chain.is_bare();
    let candidates = stem_candidates(stem, lexicon, stripped_something);
    for candidate in candidates {
        for pos in lexicon.pos_of(&candidate) {
            // nominal inflection attaches to nouns, adjectives and the
            // occasional postposition; verbs take their own chain
            if matches!(pos, Pos::Verb) {
                continue;
            }
            if !matches!(pos, Pos::Noun | Pos::Adj) && stripped_something {
                continue;
            }
            let mut analysis = MorphAnalysis::new(&candidate, *pos, vec![]);
            // bare non-noun stems keep an empty feature set
            if matches!(pos, Pos::Noun) || stripped_something {
                analysis.features = chain.root_features(false);
            }
            out.push(chain.apply(analysis));
        }
    }
    // apostrophe boundary: the pre-apostrophe string is a proper stem
    if let Some((folded_stem, display_stem)) = apostrophe {
        if stem == folded_stem && !lexicon.contains(stem) {
            let mut analysis = MorphAnalysis::new(display_stem, Pos::Noun, vec![]);
            analysis.features = chain.root_features(true);
            out.push(chain.apply(analysis));
        }
    }
}

/// Lexicon lookups for a raw stem, undoing final devoicing and vowel
/// drop when suffixes were stripped.
fn stem_candidates(stem: &str, lexicon: &MorphLexicon, repaired_allowed: bool) -> Vec<String> {
    let mut out = Vec::new();
    if lexicon.contains(stem) {
        out.push(stem.to_string());
    }
    if !repaired_allowed {
        return out;
    }
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 2 {
        // final devoicing: uzunluğ- -> uzunluk, kitab- -> kitap
        let undevoiced = match chars[n - 1] {
            'ğ' => Some('k'),
            'b' => Some('p'),
            'c' => Some('ç'),
            'd' => Some('t'),
            _ => None,
        };
        if let Some(c) = undevoiced {
            let mut repaired: String = chars[..n - 1].iter().collect();
            repaired.push(c);
            if lexicon.contains(&repaired) && !out.contains(&repaired) {
                out.push(repaired);
            }
        }
    }
    if n >= 3 && !turkish::is_vowel(chars[n - 1]) && !turkish::is_vowel(chars[n - 2]) {
        // vowel drop: şehr- -> şehir, nehr- -> nehir
        for v in ['ı', 'i', 'u', 'ü'] {
            let mut repaired: String = chars[..n - 1].iter().collect();
            repaired.push(v);
            repaired.push(chars[n - 1]);
            if lexicon.contains(&repaired) && !out.contains(&repaired) {
                out.push(repaired);
            }
        }
    }
    out
}

fn strip_verbal(folded: &str, lexicon: &MorphLexicon, out: &mut Vec<MorphAnalysis>) {
    let verb_stem = |stem: &str| {
        lexicon.contains(stem) && lexicon.pos_of(stem).contains(&Pos::Verb)
    };
    // aorist: gösterir -> göster, listeler -> listele
    for allo in AORIST {
        if let Some(stem) = folded.strip_suffix(allo) {
            if verb_stem(stem) {
                out.push(MorphAnalysis::new(stem, Pos::Verb, vec!["Pos", "Aor", "A3sg"]));
            }
        }
    }
    // present participle: olan -> ol, bulunan -> bulun
    for allo in PRES_PART {
        if let Some(stem) = folded.strip_suffix(allo) {
            if verb_stem(stem) {
                out.push(
                    MorphAnalysis::new(stem, Pos::Verb, vec!["Pos"])
                        .with_derivation(Pos::Adj, vec!["PresPart"]),
                );
            }
        }
    }
    // bare verb stem
    if verb_stem(folded) {
        out.push(MorphAnalysis::new(folded, Pos::Verb, vec!["Pos"]));
    }
}

/// Deterministic disambiguation: longest lexicon stem first, then POS
/// priority (Noun > Adj > Verb > others). A remaining accusative-vs-
/// possessive tie on the same stem is resolved by sentence context:
/// the accusative reading needs a later verb to govern it.
pub fn disambiguate(analyses_per_token: &[Vec<MorphAnalysis>]) -> Vec<MorphAnalysis> {
    let verb_at: Vec<bool> = analyses_per_token
        .iter()
        .map(|cands| cands.iter().any(|a| a.pos == Pos::Verb))
        .collect();

    analyses_per_token
        .iter()
        .enumerate()
        .map(|(i, cands)| {
            let verb_follows = verb_at[i + 1..].iter().any(|v| *v);
            let mut best: Option<(usize, &MorphAnalysis)> = None;
            for (rank, a) in cands.iter().enumerate() {
                let better = match best {
                    None => true,
                    Some((best_rank, b)) => {
                        key(a, rank, verb_follows) < key(b, best_rank, verb_follows)
                    }
                };
                if better {
                    best = Some((rank, a));
                }
            }
            best.expect("every token has at least one analysis").1.clone()
        })
        .collect()
}

type RankKey = (isize, u8, u8, usize);

fn key(a: &MorphAnalysis, generation_rank: usize, verb_follows: bool) -> RankKey {
    let stem_len = a.folded_lemma().chars().count() as isize;
    let context = match a.case() {
        Some("Acc") if verb_follows => 0,
        Some("Acc") => 1,
        Some("Nom") if a.has_root_feature("P3sg") && !verb_follows => 0,
        _ => 0,
    };
    // a P3sg|Nom reading competes with Pnon|Acc on the same stem: prefer
    // Acc when a verb follows, the possessive-nominative otherwise
    let context = if a.case() == Some("Nom") && a.has_root_feature("P3sg") && verb_follows {
        1
    } else {
        context
    };
    (-stem_len, a.pos.priority(), context, generation_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;

    fn lex() -> MorphLexicon {
        MorphLexicon::parse(resources::LEXICON).unwrap()
    }

    fn analysis_strings(surface: &str) -> Vec<String> {
        analyze(surface, &lex())
            .iter()
            .map(|a| format!("{}+{}+{}", a.lemma, a.pos, a.feats_string()))
            .collect()
    }

    #[test]
    fn illeri_has_the_accusative_plural_reading() {
        let all = analysis_strings("illeri");
        assert!(
            all.iter().any(|s| s == "il+Noun+A3pl|Pnon|Acc"),
            "analyses were {all:?}"
        );
    }

    #[test]
    fn bolgesinin_strips_to_the_genitive_possessive() {
        let all = analysis_strings("Bölgesi'nin");
        assert!(
            all.iter().any(|s| s == "bölge+Noun+A3sg|P3sg|Gen"),
            "analyses were {all:?}"
        );
    }

    #[test]
    fn unknown_token_falls_back_to_proper_noun() {
        let all = analyze("Ankara", &lex());
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].lemma, "Ankara");
        assert_eq!(all[0].pos, Pos::Noun);
        assert_eq!(all[0].feats_string(), "Prop|A3sg|Pnon|Nom");
    }

    #[test]
    fn disambiguation_picks_il_for_iline() {
        let lex = lex();
        let sentence: Vec<Vec<MorphAnalysis>> = ["Ankara", "iline", "komşu", "olan"]
            .iter()
            .map(|t| analyze(t, &lex))
            .collect();
        let chosen = disambiguate(&sentence);
        assert_eq!(chosen[1].lemma, "il");
        assert_eq!(chosen[1].feats_string(), "A3sg|P3sg|Dat");
    }

    #[test]
    fn single_analysis_tokens_pass_through() {
        let lex = lex();
        let sentence = vec![analyze("komşu", &lex)];
        let chosen = disambiguate(&sentence);
        assert_eq!(chosen[0].lemma, "komşu");
        assert_eq!(chosen[0].pos, Pos::Adj);
    }

    #[test]
    fn kadardir_keeps_the_copular_derivation_chain() {
        let all = analyze("kadardır", &lex());
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].lemma, "kadar");
        assert_eq!(all[0].pos, Pos::Postp);
        assert!(all[0].is_copular());
        assert_eq!(
            all[0].feats_string(),
            "PCNom^DB|Noun|Zero|A3sg|Pnon|Nom^DB|Verb|Zero|Pres|A3sg|Cop"
        );
    }

    #[test]
    fn devoicing_and_vowel_drop_repairs() {
        let lex = lex();
        let chosen = disambiguate(&[analyze("uzunluğu", &lex)]);
        assert_eq!(chosen[0].lemma, "uzunluk");
        let chosen = disambiguate(&[analyze("şehrinin", &lex)]);
        assert_eq!(chosen[0].lemma, "şehir");
        assert_eq!(chosen[0].feats_string(), "A3sg|P3sg|Gen");
    }

    #[test]
    fn relativized_locative_keeps_the_derivation() {
        let lex = lex();
        let chosen = disambiguate(&[analyze("Bölgesi'ndeki", &lex)]);
        assert_eq!(chosen[0].lemma, "bölge");
        assert_eq!(chosen[0].feats_string(), "A3sg|P3sg|Loc^DB|Adj|Rel");
    }
}
