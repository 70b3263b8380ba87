//! Deliberately naive reference implementation of both rule tables:
//! literal sequential scans, every step its own function, no shared code
//! with the production engine. Including its own copy of the ending table,
//! so a transcription slip in either place shows up as a disagreement.

/// Global replace repeated until nothing changes.
fn fix(s: &str, pattern: &str, replacement: &str) -> String {
    let mut cur = s.to_string();
    loop {
        let next = cur.replace(pattern, replacement);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Leftmost scan over a pattern set (longest wins at a position),
/// repeated until nothing changes.
fn set_fix(s: &str, patterns: &[&str], replacement: &str) -> String {
    let mut cur: Vec<char> = s.chars().collect();
    loop {
        let mut out: Vec<char> = Vec::with_capacity(cur.len());
        let mut i = 0;
        let mut changed = false;
        while i < cur.len() {
            let tail: String = cur[i..].iter().collect();
            let hit = patterns
                .iter()
                .filter(|p| tail.starts_with(**p))
                .max_by_key(|p| p.chars().count());
            match hit {
                Some(p) => {
                    out.extend(replacement.chars());
                    i += p.chars().count();
                    changed = true;
                }
                None => {
                    out.push(cur[i]);
                    i += 1;
                }
            }
        }
        if !changed || out == cur {
            return out.into_iter().collect();
        }
        cur = out;
    }
}

fn end_fix(s: &str, pattern: &str, replacement: &str) -> String {
    let mut cur = s.to_string();
    while cur.ends_with(pattern) {
        let stem = cur.len() - pattern.len();
        let candidate = format!("{}{}", &cur[..stem], replacement);
        if candidate == cur {
            break;
        }
        cur = candidate;
    }
    cur
}

fn assimilate(s: &str) -> String {
    const LEADING: [(char, char); 5] = [('п', 'б'), ('х', 'г'), ('т', 'д'), ('ш', 'ж'), ('с', 'з')];
    const VOICED: [char; 5] = ['б', 'г', 'д', 'ж', 'з'];
    let mut cur: Vec<char> = s.chars().collect();
    loop {
        let mut out: Vec<char> = Vec::with_capacity(cur.len());
        let mut i = 0;
        let mut changed = false;
        while i < cur.len() {
            if i + 1 < cur.len() && VOICED.contains(&cur[i + 1]) {
                if let Some(&(_, to)) = LEADING.iter().find(|&&(from, _)| from == cur[i]) {
                    out.push(to);
                    out.push(cur[i + 1]);
                    i += 2;
                    changed = true;
                    continue;
                }
            }
            out.push(cur[i]);
            i += 1;
        }
        if !changed || out == cur {
            return out.into_iter().collect();
        }
        cur = out;
    }
}

fn squeeze(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if !out.ends_with(c) {
            out.push(c);
        }
    }
    out
}

// an independent transcription of the ending table
const ENDING_CODES: &[(&str, char)] = &[
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

fn compress_ending(s: &str) -> String {
    for &(pattern, code) in ENDING_CODES {
        if let Some(stem) = s.strip_suffix(pattern) {
            return format!("{stem}{code}");
        }
    }
    s.to_string()
}

/// Reference key for a cleaned surname token.
pub fn naive_surname_key(cleaned: &str) -> String {
    if cleaned.contains('-') {
        return cleaned.to_string();
    }
    let mut s = cleaned.to_string();
    s = fix(&s, "ґ", "г");
    for (p, r) in [
        ("іе", "е"),
        ("йе", "е"),
        ("іа", "а"),
        ("ія", "а"),
        ("йо", "о"),
        ("є", "е"),
        ("я", "а"),
        ("і", "и"),
        ("ї", "и"),
        ("й", "и"),
        ("ю", "у"),
    ] {
        s = fix(&s, p, r);
    }
    s = end_fix(&s, "ў", "в");
    s = set_fix(&s, &["цьк", "дськ", "тськ", "кськ", "чськ", "цськ"], "3");
    s = set_fix(&s, &["зьк", "гськ", "жськ", "зськ"], "2");
    s = fix(&s, "сськ", "ськ");
    s = fix(&s, "ськ", "1");
    s = fix(&s, "ь", "");
    s = assimilate(&s);
    s = fix(&s, "хв", "ф");
    s = set_fix(&s, &["сч", "жч", "шч", "щч"], "щ");
    for (p, r) in [
        ("стн", "сн"),
        ("здн", "зн"),
        ("слн", "сн"),
        ("стл", "сл"),
        ("шчн", "шн"),
        ("цв", "ц"),
    ] {
        s = fix(&s, p, r);
    }
    s = squeeze(&s);
    compress_ending(&s)
}

/// Reference key for a cleaned medicine token.
pub fn naive_medicine_key(cleaned: &str) -> String {
    let mut s = cleaned.to_string();
    s = fix(&s, "ґ", "г");
    for (p, r) in [
        ("йе", "е"),
        ("іе", "е"),
        ("іа", "а"),
        ("ія", "а"),
        ("иа", "а"),
        ("йо", "о"),
        ("є", "е"),
        ("э", "е"),
        ("я", "а"),
        ("і", "и"),
        ("ї", "и"),
        ("ы", "и"),
        ("й", "и"),
        ("ю", "у"),
        ("ё", "о"),
    ] {
        s = fix(&s, p, r);
    }
    squeeze(&s)
}
