//! The bilingual (Ukrainian and Russian) medicine rule table.
//!
//! Medicine titles are searched in both languages at once, so the table
//! keeps only the phonetic features the two languages share: soft/hard-sign
//! and apostrophe removal happen upstream in cleaning, vowels of both
//! alphabets reduce to joint sound forms, duplicates collapse. There are no
//! cluster codes, no assimilation and no ending compression: endings carry
//! pharmacological meaning and must stay intact.

use std::sync::LazyLock;

use crate::rewrite::{RewriteRule, RuleSet};
use crate::textnorm::{clean_medicine, CleanToken};
use crate::PhoneticKey;

static RULES: LazyLock<RuleSet> = LazyLock::new(|| {
    use RewriteRule as R;
    RuleSet::new(
        "medicine",
        vec![
            R::literal("ґ", "г"),
            // vowel digraphs of both languages first
            R::literal("йе", "е"),
            R::literal("іе", "е"),
            R::literal("іа", "а"),
            R::literal("ія", "а"),
            R::literal("иа", "а"),
            R::literal("йо", "о"),
            // then single vowels
            R::literal("є", "е"),
            R::literal("э", "е"),
            R::literal("я", "а"),
            R::literal("і", "и"),
            R::literal("ї", "и"),
            R::literal("ы", "и"),
            R::literal("й", "и"),
            R::literal("ю", "у"),
            R::literal("ё", "о"),
            R::dedup(),
        ],
    )
});

/// The canonical medicine rule table.
pub fn medicine_rules() -> &'static RuleSet {
    &RULES
}

/// Key for one already-cleaned medicine token.
pub fn medicine_token_key(token: &CleanToken) -> PhoneticKey {
    PhoneticKey::new(RULES.apply(token.text()))
}

/// Cleans a raw title and keys every surviving token, order preserved.
/// Multi-word titles yield one key per word; an empty list is a valid
/// result (every token was shorter than four characters).
pub fn medicine_keys(raw: &str) -> Vec<PhoneticKey> {
    clean_medicine(raw).iter().map(medicine_token_key).collect()
}
