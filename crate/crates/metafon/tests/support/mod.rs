//! Shared test support: a deterministic corpus generator seeded with the
//! most common Ukrainian surnames, spelling-variant mutators, and a naive
//! reference implementation of both rule tables.

#![allow(dead_code)]

pub mod oracle;

/// The most common surnames with their rate in tenths of a per mille.
pub const COMMON_SURNAMES: &[(&str, u32)] = &[
    ("мельник", 33),
    ("шевченко", 30),
    ("бойко", 26),
    ("коваленко", 25),
    ("бондаренко", 25),
    ("ткаченко", 23),
    ("ковальчук", 22),
    ("кравченко", 22),
    ("іванов", 20),
    ("олійник", 19),
    ("коваль", 18),
    ("шевчук", 18),
    ("поліщук", 17),
    ("ткачук", 14),
    ("бондар", 14),
    ("марченко", 14),
    ("лисенко", 13),
    ("мороз", 13),
    ("савченко", 13),
    ("руденко", 13),
    ("петренко", 13),
    ("кравчук", 12),
    ("клименко", 12),
    ("попов", 12),
    ("павленко", 11),
    ("савчук", 11),
    ("кузьменко", 11),
    ("левченко", 11),
    ("пономаренко", 10),
    ("василенко", 10),
    ("волошин", 10),
    ("харченко", 10),
    ("ковальов", 10),
    ("карпенко", 10),
    ("сидоренко", 10),
    ("гаврилюк", 10),
    ("мельничук", 10),
    ("хоменко", 10),
    ("павлюк", 10),
    ("швець", 10),
    ("попович", 10),
    ("романюк", 9),
    ("чорний", 9),
    ("панченко", 9),
    ("литвиненко", 9),
    ("мазур", 9),
    ("кушнір", 9),
    ("юрченко", 9),
    ("дяченко", 8),
    ("мартинюк", 8),
    ("костюк", 8),
    ("ткач", 8),
    ("петров", 8),
    ("семенюк", 8),
    ("приходько", 8),
    ("костенко", 8),
    ("гончаренко", 8),
    ("кулик", 8),
    ("коломієць", 8),
    ("білоус", 8),
    ("назаренко", 8),
    ("волков", 8),
    ("кравець", 8),
    ("козак", 8),
    ("ковтун", 8),
];

/// splitmix64: small, fast, deterministic; plenty for corpus generation.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n` (`n` must be non-zero).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    /// True with probability `num/den`.
    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }
}

const ONSETS: &[&str] = &[
    "б", "в", "г", "д", "ж", "з", "к", "л", "м", "н", "п", "р", "с", "т", "ф", "х", "ц", "ч", "ш",
    "щ", "бр", "гр", "кр", "шв", "ст", "тк", "кв", "зв", "пл",
];
const VOWELS: &[&str] = &["а", "е", "и", "о", "у", "і"];
const SUFFIXES: &[&str] = &[
    "",
    "енко",
    "ук",
    "юк",
    "чук",
    "ик",
    "ник",
    "ко",
    "ак",
    "ач",
    "ар",
    "ун",
    "ій",
    "ський",
    "цький",
    "ець",
    "ишин",
    "ович",
    "евич",
    "ушко",
];

/// One synthetic surname-shaped string, lowercase and already clean.
pub fn synth_surname(rng: &mut Rng) -> String {
    let syllables = 2 + rng.below(2);
    let mut s = String::new();
    for _ in 0..syllables {
        s.push_str(rng.pick(ONSETS));
        s.push_str(rng.pick(VOWELS));
    }
    s.push_str(rng.pick(SUFFIXES));
    s
}

/// A pool of distinct synthetic surnames.
pub fn surname_pool(rng: &mut Rng, size: usize) -> Vec<String> {
    let mut pool = Vec::with_capacity(size);
    let mut seen = std::collections::HashSet::new();
    while pool.len() < size {
        let name = synth_surname(rng);
        if name.chars().count() >= 3 && seen.insert(name.clone()) {
            pool.push(name);
        }
    }
    pool
}

/// A corpus of `total` records: the common surnames at their published
/// rates, the rest drawn rank-skewed from the synthetic pool.
pub fn seeded_corpus(rng: &mut Rng, total: usize, pool: &[String]) -> Vec<String> {
    let mut corpus = Vec::with_capacity(total);
    for &(name, tenths) in COMMON_SURNAMES {
        let count = (tenths as usize * total) / 10_000;
        for _ in 0..count {
            corpus.push(name.to_string());
        }
    }
    while corpus.len() < total {
        // squaring skews toward the front of the pool
        let u = rng.below(pool.len() * pool.len());
        let idx = (u as f64).sqrt() as usize;
        corpus.push(pool[idx.min(pool.len() - 1)].clone());
    }
    // deterministic shuffle
    for i in (1..corpus.len()).rev() {
        let j = rng.below(i + 1);
        corpus.swap(i, j);
    }
    corpus
}

const CYRILLIC_TO_LATIN: &[(char, char)] = &[
    ('а', 'a'),
    ('в', 'b'),
    ('с', 'c'),
    ('д', 'd'),
    ('е', 'e'),
    ('н', 'h'),
    ('і', 'i'),
    ('к', 'k'),
    ('м', 'm'),
    ('о', 'o'),
    ('р', 'p'),
    ('т', 't'),
    ('и', 'u'),
    ('х', 'x'),
    ('у', 'y'),
];

fn chars_of(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn is_vowel(c: char) -> bool {
    matches!(
        c,
        'а' | 'е' | 'и' | 'о' | 'у' | 'і' | 'ї' | 'є' | 'я' | 'ю' | 'ы' | 'э' | 'ё'
    )
}

/// The spelling-confusion classes the surname algorithm collapses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurnameClass {
    Homoglyph,
    Apostrophe,
    SoftSignDrop,
    SoftSignInsert,
    Doubling,
    IotaSwap,
    YatSwap,
    GheSwap,
    EnkoEnding,
}

pub const SURNAME_CLASSES: &[SurnameClass] = &[
    SurnameClass::Homoglyph,
    SurnameClass::Apostrophe,
    SurnameClass::SoftSignDrop,
    SurnameClass::SoftSignInsert,
    SurnameClass::Doubling,
    SurnameClass::IotaSwap,
    SurnameClass::YatSwap,
    SurnameClass::GheSwap,
    SurnameClass::EnkoEnding,
];

/// Derives one variant of `base` for the class, restricted to sites where
/// the algorithm guarantees collapse; `None` when the class does not apply.
///
/// Site restrictions mirror the rule tables: a dropped soft sign must not
/// sit in a `-ьк-` cluster, vowel swaps must not build or break a digraph,
/// and consonants double only between vowels (the duplicate collapse runs
/// before ending compression but after the consonant-group rules).
pub fn surname_variant(rng: &mut Rng, base: &str, class: SurnameClass) -> Option<String> {
    let chars = chars_of(base);
    let positions = |pred: &dyn Fn(usize, char) -> bool| -> Vec<usize> {
        chars
            .iter()
            .enumerate()
            .filter(|&(i, &c)| pred(i, c))
            .map(|(i, _)| i)
            .collect()
    };
    let next = |i: usize| chars.get(i + 1).copied();
    let prev = |i: usize| {
        if i == 0 {
            None
        } else {
            chars.get(i - 1).copied()
        }
    };

    let rebuilt = |chars: Vec<char>| chars.into_iter().collect::<String>();

    match class {
        SurnameClass::Homoglyph => {
            let sites = positions(&|_, c| CYRILLIC_TO_LATIN.iter().any(|&(cy, _)| cy == c));
            if sites.is_empty() {
                return None;
            }
            let i = *rng.pick(&sites);
            let mut out = chars;
            let (_, latin) = CYRILLIC_TO_LATIN
                .iter()
                .find(|&&(cy, _)| cy == out[i])
                .unwrap();
            out[i] = *latin;
            Some(rebuilt(out))
        }
        SurnameClass::Apostrophe => {
            if chars.len() < 2 {
                return None;
            }
            let i = 1 + rng.below(chars.len() - 1);
            let mut out = chars;
            out.insert(i, '\'');
            Some(rebuilt(out))
        }
        SurnameClass::SoftSignDrop => {
            let sites = positions(&|i, c| c == 'ь' && next(i) != Some('к'));
            if sites.is_empty() {
                return None;
            }
            let i = *rng.pick(&sites);
            let mut out = chars;
            out.remove(i);
            if out.iter().filter(|&&c| c != '-').count() < 2 {
                return None;
            }
            Some(rebuilt(out))
        }
        SurnameClass::SoftSignInsert => {
            // after a consonant, never right before к
            let sites = positions(&|i, c| {
                !is_vowel(c) && c != 'ь' && c != '-' && next(i) != Some('к') && next(i) != Some('ь')
            });
            if sites.is_empty() {
                return None;
            }
            let i = *rng.pick(&sites);
            let mut out = chars;
            out.insert(i + 1, 'ь');
            Some(rebuilt(out))
        }
        SurnameClass::Doubling => {
            let sites = positions(&|i, c| {
                if c == '-' || c == 'ь' || c == 'ъ' {
                    return false;
                }
                if is_vowel(c) {
                    true
                } else {
                    prev(i).is_none_or(is_vowel) && next(i).is_none_or(is_vowel)
                }
            });
            if sites.is_empty() {
                return None;
            }
            let i = *rng.pick(&sites);
            let mut out = chars;
            let c = out[i];
            out.insert(i, c);
            Some(rebuilt(out))
        }
        SurnameClass::IotaSwap => {
            let sites = positions(&|i, c| {
                matches!(c, 'і' | 'и' | 'ї') && !matches!(next(i), Some('е' | 'а' | 'я' | 'о'))
            });
            if sites.is_empty() {
                return None;
            }
            let i = *rng.pick(&sites);
            let mut out = chars;
            let options: Vec<char> = ['і', 'и', 'ї']
                .into_iter()
                .filter(|&c| c != out[i])
                .collect();
            out[i] = *rng.pick(&options);
            Some(rebuilt(out))
        }
        SurnameClass::YatSwap => {
            let sites =
                positions(&|i, c| matches!(c, 'е' | 'є') && !matches!(prev(i), Some('і' | 'й')));
            if sites.is_empty() {
                return None;
            }
            let i = *rng.pick(&sites);
            let mut out = chars;
            out[i] = if out[i] == 'е' { 'є' } else { 'е' };
            Some(rebuilt(out))
        }
        SurnameClass::GheSwap => {
            let sites = positions(&|_, c| c == 'г' || c == 'ґ');
            if sites.is_empty() {
                return None;
            }
            let i = *rng.pick(&sites);
            let mut out = chars;
            out[i] = if out[i] == 'г' { 'ґ' } else { 'г' };
            Some(rebuilt(out))
        }
        SurnameClass::EnkoEnding => {
            if let Some(stem) = base.strip_suffix("енко") {
                Some(format!("{stem}енка"))
            } else {
                base.strip_suffix("енка").map(|stem| format!("{stem}енко"))
            }
        }
    }
}

/// A variant at an arbitrary site, with no collapse guarantee. Used to
/// diversify coverage corpora, not to test recall.
pub fn arbitrary_mutation(rng: &mut Rng, base: &str) -> String {
    let chars = chars_of(base);
    if chars.is_empty() {
        return base.to_string();
    }
    let i = rng.below(chars.len());
    let mut out = chars;
    match rng.below(5) {
        0 => {
            let c = out[i];
            out.insert(i, c);
        }
        1 => out[i] = *rng.pick(&['і', 'и', 'ї', 'е', 'є', 'я', 'ю', 'й']),
        2 => out.insert(i, 'ь'),
        3 => {
            if out.len() > 2 {
                out.remove(i);
            }
        }
        _ => out.insert(i, *rng.pick(&['\'', 'ь', 'ъ'])),
    }
    out.into_iter().collect()
}

/// A random string over the accepted surname alphabet.
pub fn random_letters(rng: &mut Rng, min_len: usize, max_len: usize) -> String {
    const ALPHABET: &[char] = &[
        'а', 'б', 'в', 'г', 'д', 'е', 'ж', 'з', 'и', 'й', 'к', 'л', 'м', 'н', 'о', 'п', 'р', 'с',
        'т', 'у', 'ф', 'х', 'ц', 'ч', 'ш', 'щ', 'ь', 'ю', 'я', 'є', 'і', 'ї', 'ґ', 'ё', 'ы', 'э',
        'ъ',
    ];
    let len = min_len + rng.below(max_len - min_len + 1);
    (0..len).map(|_| *rng.pick(ALPHABET)).collect()
}

/// The bilingual confusion classes for medicine titles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MedicineClass {
    IotaSwap,
    YatSwap,
    YoSwap,
    SignInsert,
    Doubling,
}

pub const MEDICINE_CLASSES: &[MedicineClass] = &[
    MedicineClass::IotaSwap,
    MedicineClass::YatSwap,
    MedicineClass::YoSwap,
    MedicineClass::SignInsert,
    MedicineClass::Doubling,
];

const MED_ONSETS: &[&str] = &[
    "п", "т", "к", "м", "н", "л", "р", "с", "д", "г", "ф", "б", "з",
];
const MED_CODAS: &[&str] = &[
    "зол", "цин", "мол", "рол", "фен", "гел", "пан", "зин", "дол",
];

/// A Russian-leaning base token (plain и, е, о vowels), length 5 or more.
pub fn synth_medicine(rng: &mut Rng) -> String {
    let mut s = String::new();
    for _ in 0..(1 + rng.below(2)) {
        s.push_str(rng.pick(MED_ONSETS));
        s.push_str(rng.pick(&["а", "е", "и", "о", "у"]));
    }
    s.push_str(rng.pick(MED_CODAS));
    s
}

/// A bilingual spelling pair for the class, built so that both sides clean
/// and key identically; `None` when the base offers no site.
pub fn medicine_pair(rng: &mut Rng, base: &str, class: MedicineClass) -> Option<(String, String)> {
    let chars = chars_of(base);
    let next = |i: usize| chars.get(i + 1).copied();
    let prev = |i: usize| {
        if i == 0 {
            None
        } else {
            chars.get(i - 1).copied()
        }
    };
    let sites: Vec<usize> = match class {
        // і/и/ы swaps must not touch a digraph head position
        MedicineClass::IotaSwap => chars
            .iter()
            .enumerate()
            .filter(|&(i, &c)| {
                matches!(c, 'и' | 'і' | 'ы') && !matches!(next(i), Some('е' | 'я' | 'а' | 'о'))
            })
            .map(|(i, _)| i)
            .collect(),
        MedicineClass::YatSwap => chars
            .iter()
            .enumerate()
            .filter(|&(i, &c)| matches!(c, 'е' | 'є' | 'э') && !matches!(prev(i), Some('й' | 'і')))
            .map(|(i, _)| i)
            .collect(),
        MedicineClass::YoSwap => chars
            .iter()
            .enumerate()
            .filter(|&(i, &c)| matches!(c, 'о' | 'ё') && prev(i) != Some('й'))
            .map(|(i, _)| i)
            .collect(),
        MedicineClass::SignInsert => (1..chars.len()).collect(),
        MedicineClass::Doubling => (0..chars.len()).collect(),
    };
    if sites.is_empty() {
        return None;
    }
    let i = *rng.pick(&sites);
    let mut other = chars.clone();
    match class {
        MedicineClass::IotaSwap => {
            let options: Vec<char> = ['и', 'і', 'ы']
                .into_iter()
                .filter(|&c| c != other[i])
                .collect();
            other[i] = *rng.pick(&options);
        }
        MedicineClass::YatSwap => {
            let options: Vec<char> = ['е', 'є', 'э']
                .into_iter()
                .filter(|&c| c != other[i])
                .collect();
            other[i] = *rng.pick(&options);
        }
        MedicineClass::YoSwap => {
            other[i] = if other[i] == 'о' { 'ё' } else { 'о' };
        }
        MedicineClass::SignInsert => {
            other.insert(i, *rng.pick(&['ь', 'ъ']));
        }
        MedicineClass::Doubling => {
            let c = other[i];
            other.insert(i, c);
        }
    }
    Some((base.to_string(), other.into_iter().collect()))
}
