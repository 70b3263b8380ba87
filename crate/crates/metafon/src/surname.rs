//! The Ukrainian surname rule table and key generation.
//!
//! The table reduces spelling variants of one pronunciation to a single key:
//! vowels go to their sound forms, the `-ськ-` cluster family becomes the
//! digit codes `1`/`2`/`3`, assimilated and simplified consonant groups are
//! normalized, duplicates collapse, and twenty-one frequent endings compress
//! to the code letters `A`..`U`. Hyphenated (double and triple) surnames are
//! unique enough as spelled and bypass the table.

use std::sync::LazyLock;

use crate::rewrite::{RewriteRule, RewriteTrace, RuleSet};
use crate::textnorm::CleanToken;
use crate::PhoneticKey;

/// Word-end spellings compressed to a single code letter. Every pattern is
/// four letters, so at most one can match and only at the word end.
pub const ENDINGS: &[(&str, char)] = &[
    ("авко", 'A'),
    ("айко", 'B'),
    ("айка", 'B'),
    ("айло", 'C'),
    ("анко", 'D'),
    ("ашко", 'E'),
    ("евич", 'F'),
    ("евка", 'G'),
    ("ейко", 'H'),
    ("ейка", 'H'),
    ("енко", 'I'),
    ("енка", 'I'),
    ("ечко", 'J'),
    ("ешко", 'K'),
    ("ийло", 'L'),
    ("иско", 'M'),
    ("ишин", 'N'),
    ("ишко", 'O'),
    ("ович", 'P'),
    ("онко", 'Q'),
    ("очко", 'R'),
    ("уник", 'S'),
    ("унко", 'T'),
    ("унка", 'T'),
    ("ушко", 'U'),
    ("ушка", 'U'),
];

fn ending_rules() -> Vec<RewriteRule> {
    // group consecutive patterns that share a code letter into one rule
    let mut rules: Vec<RewriteRule> = Vec::new();
    let mut i = 0;
    while i < ENDINGS.len() {
        let code = ENDINGS[i].1;
        let mut patterns = Vec::new();
        while i < ENDINGS.len() && ENDINGS[i].1 == code {
            patterns.push(ENDINGS[i].0);
            i += 1;
        }
        rules.push(RewriteRule::set_to_one_at_end(&patterns, &code.to_string()));
    }
    rules
}

static RULES: LazyLock<RuleSet> = LazyLock::new(|| {
    use RewriteRule as R;
    let mut rules = vec![
        R::literal("ґ", "г"),
        // vowel digraphs first, then single vowels, to their sound forms
        R::literal("іе", "е"),
        R::literal("йе", "е"),
        R::literal("іа", "а"),
        R::literal("ія", "а"),
        R::literal("йо", "о"),
        R::literal("є", "е"),
        R::literal("я", "а"),
        R::literal("і", "и"),
        R::literal("ї", "и"),
        R::literal("й", "и"),
        R::literal("ю", "у"),
        // non-syllabic u at a word's end
        R::literal_at_end("ў", "в"),
        // the -ськ- cluster family to digit codes; the soft sign is still
        // present here and must be: removing it first kills these patterns
        R::set_to_one(&["цьк", "дськ", "тськ", "кськ", "чськ", "цськ"], "3"),
        R::set_to_one(&["зьк", "гськ", "жськ", "зськ"], "2"),
        R::literal("сськ", "ськ"),
        R::literal("ськ", "1"),
        // global soft-sign removal, after the cluster codes
        R::literal("ь", ""),
        // voicing assimilation before б г д ж з
        R::class_pair(
            &[('п', 'б'), ('х', 'г'), ('т', 'д'), ('ш', 'ж'), ('с', 'з')],
            &['б', 'г', 'д', 'ж', 'з'],
        ),
        // fricative fusion
        R::literal("хв", "ф"),
        // hushing clusters
        R::set_to_one(&["сч", "жч", "шч", "щч"], "щ"),
        // consonant-group simplification
        R::literal("стн", "сн"),
        R::literal("здн", "зн"),
        R::literal("слн", "сн"),
        R::literal("стл", "сл"),
        R::literal("шчн", "шн"),
        R::literal("цв", "ц"),
        // duplicate letters collapse, vowels and consonants alike
        R::dedup(),
    ];
    rules.extend(ending_rules());
    RuleSet::new("surname", rules)
});

/// The canonical surname rule table.
pub fn surname_rules() -> &'static RuleSet {
    &RULES
}

/// Phonetic key for a cleaned surname. Hyphenated tokens pass through
/// unchanged; everything else runs the full table.
pub fn surname_key(token: &CleanToken) -> PhoneticKey {
    if token.hyphenated() {
        PhoneticKey::new(token.text().to_string())
    } else {
        PhoneticKey::new(RULES.apply(token.text()))
    }
}

/// Like [`surname_key`], also returning the trace of fired rules.
pub fn surname_key_trace(token: &CleanToken) -> (PhoneticKey, RewriteTrace) {
    if token.hyphenated() {
        (
            PhoneticKey::new(token.text().to_string()),
            RewriteTrace::default(),
        )
    } else {
        let (key, trace) = RULES.apply_traced(token.text());
        (PhoneticKey::new(key), trace)
    }
}
